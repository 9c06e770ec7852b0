#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isosep {

/// Malformed parameters, kind mismatches, bad schema.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An orbit search ran out of budget (or the orbit itself ran out) before it
/// found what it was looking for. This is "unknown", never a disproof.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, std::size_t explored)
      : std::runtime_error(what), explored_(explored) {}

  std::size_t explored() const { return explored_; }

 private:
  std::size_t explored_;
};

}  // namespace isosep
