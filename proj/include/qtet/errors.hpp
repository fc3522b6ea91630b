#pragma once

#include <stdexcept>
#include <string>

namespace qtet {

// Caller supplied something outside an operation's contract (bad r, an
// inadmissible coloring, a malformed file). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not produce a trustworthy value. Exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation point lies within tolerance of a pole of the quantum dilogarithm.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

// (alpha, xi) left the region on which the potential U is analytic.
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A brute-force enumeration would exceed its configured work cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtet
