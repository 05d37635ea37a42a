#pragma once

#include <stdexcept>
#include <string>

namespace latdec {

/// Bad input: malformed files, violated preconditions, failed construction checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or list computation ran past its configured work cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace latdec
