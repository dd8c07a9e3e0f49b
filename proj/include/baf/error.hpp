#pragma once

#include <stdexcept>
#include <string>

namespace baf {

// Every library failure derives from baf::Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown job, machine or F-shaped job id.
class IdentifierError : public Error {
 public:
  using Error::Error;
};

// A schedule or instance breaks a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (epsilon <= 0, p > 1 ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration or DP would exceed its configured budget.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, unsigned long long requested,
                unsigned long long budget)
      : Error(what + " (requested " + std::to_string(requested) +
              ", budget " + std::to_string(budget) + ")"),
        requested_(requested),
        budget_(budget) {}

  unsigned long long requested() const noexcept { return requested_; }
  unsigned long long budget() const noexcept { return budget_; }

 private:
  unsigned long long requested_;
  unsigned long long budget_;
};

// Jobs exist but there is no machine to put them on.
class InfeasibleInstanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace baf
