#pragma once

#include <stdexcept>
#include <string>

namespace xxrelay {

// Bad chain/run configuration (N too small, invalid mode, ...): CLI exit 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Out-of-range physics parameter or index (lambda outside [0,1], bad pair, ...).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Numerics went bad (NaN, eigenvalue below tolerance, no maximum found): CLI exit 3.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard size guard (full-Hilbert oracle beyond N=6).
class SizeLimitError : public std::invalid_argument {
public:
    explicit SizeLimitError(const std::string& what) : std::invalid_argument(what) {}
};

// attaches the sweep coordinate to a failure bubbling out of a grid loop
[[noreturn]] inline void rethrow_with_params(const NumericalFailure& e, double lambda,
                                             double alpha) {
    throw NumericalFailure(std::string(e.what()) + " (lambda=" + std::to_string(lambda) +
                           ", alpha=" + std::to_string(alpha) + ")");
}

}  // namespace xxrelay
