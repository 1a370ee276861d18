// errors.hpp
// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace phaseron {

// A gate references a qubit outside the register or repeats an index.
class InvalidGateError : public std::invalid_argument {
public:
    explicit InvalidGateError(const std::string& what) : std::invalid_argument(what) {}
};

// A state handed to a gate application is no longer normalized.
class CorruptedStateError : public std::runtime_error {
public:
    explicit CorruptedStateError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a dense-representation guard (e.g. dense_unitary above 6 qubits).
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Invalid experiment or training configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure, message carries the offending path. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phaseron
