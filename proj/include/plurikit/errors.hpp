#pragma once

#include <stdexcept>
#include <string>

namespace plurikit {

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a search exhausts its budget and the caller asked for a hard failure.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plurikit
