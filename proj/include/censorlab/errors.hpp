#pragma once

#include <stdexcept>
#include <string>

namespace censorlab {

// Error categories map onto CLI exit codes: config=2, io=3, data=4.
// Anything else that escapes is an internal error (5).

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace censorlab
