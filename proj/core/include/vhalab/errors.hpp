#pragma once

#include <stdexcept>
#include <string>

namespace vhalab {

// Raised when a user supplied configuration (CLI flags, config file,
// scenario parameters) cannot be turned into a runnable experiment.
// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vhalab
