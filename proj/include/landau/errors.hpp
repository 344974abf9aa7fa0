#pragma once

#include <stdexcept>

namespace landau {

/// Argument outside the region where a formula is defined (n + a <= 0, n + c = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a configured cap (sequence length, polynomial order).
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear condition whose coefficient vector vanishes identically.
class DegenerateBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace landau
