#pragma once

#include <stdexcept>
#include <string>

namespace coldplasma {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed request: bad config, bad CLI arguments, empty input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Initial data with C(rho) identically constant (simple wave) is outside
/// the scope of the smoothness test and the blow-up search.
class SimpleWaveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coldplasma
