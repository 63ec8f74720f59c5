#pragma once

#include <stdexcept>
#include <string>

namespace stable_limits {

// Configuration / argument problems. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature non-convergence, detected non-integrability, degenerate
// estimator inputs. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / stream failures. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stable_limits
