#pragma once

#include <stdexcept>
#include <string>

namespace mcnn {

/// Bad user input: config files, CLI values, malformed checkpoints.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure at runtime: unstable FD spec, non-finite loss,
/// domain violations reached during a solve. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mcnn
