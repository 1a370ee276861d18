// format.hpp
// Deterministic text formatting for CSV and metadata output. Doubles go
// through std::to_chars (shortest round-trip form), so identical values
// always produce identical bytes regardless of locale or stream state.

#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace phaseron {

inline std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

// RFC 4180 field quoting: fields containing commas, quotes or line breaks are
// wrapped in double quotes with embedded quotes doubled.
inline std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace phaseron
