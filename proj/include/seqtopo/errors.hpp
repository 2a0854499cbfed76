#pragma once

#include <stdexcept>
#include <string>

namespace seqtopo {

/// Bad flags/config values. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

/// Unreadable or malformed input data. CLI exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

/// Internal invariant violation. CLI exit code 3.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace seqtopo
