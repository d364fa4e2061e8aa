#pragma once

#include <stdexcept>
#include <string>

namespace paircorr {

// Caller violated a precondition (bad flag, mismatched grids, N too small).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically undefined input (zero denominators and the like).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Two independent computations of the same quantity disagreed.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace paircorr
