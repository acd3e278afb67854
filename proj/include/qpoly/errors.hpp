#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by every qpoly module.
 *
 * The CLI maps these onto exit codes: InputError (and ParseError,
 * OverflowError) exit 1, BudgetExceeded exits 2.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpoly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition or shape violation in the caller's input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed form text; position is a byte offset into the input.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Checked 128-bit arithmetic left its range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An enumeration ran past its configured ceiling before reaching a decision.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qpoly
