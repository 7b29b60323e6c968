#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

/// Invalid grid, symbol, or experiment configuration.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numerical failure (NaN/Inf state, singular system, non-convergence).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlslab
