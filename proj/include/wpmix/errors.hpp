#pragma once

#include <stdexcept>
#include <string>

namespace wpmix {

// Invalid model/config input. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature/root-finding breakdown after refinement limits. Exit code 2.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A Monte Carlo oracle could not produce a usable sample (e.g. too few
// slab acceptances). Carries guidance for the caller. Exit code 3.
class InconclusiveOracle : public std::runtime_error {
public:
  explicit InconclusiveOracle(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wpmix
