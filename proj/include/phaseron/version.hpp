#pragma once

namespace phaseron {

inline constexpr const char* kVersion = "0.1.0";

}
