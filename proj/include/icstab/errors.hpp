#pragma once

#include <stdexcept>
#include <string>

namespace icstab {

// A value outside the mathematical domain of an operation (negative distance,
// ZF with a single antenna, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent user configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace icstab
