#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbird {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (terms, forests, system files, b-files).
class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_combinator, zero_variable, bad_alphabet };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error(message + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Well-formed input that violates a semantic constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Structural failure of a lattice operation on forests that are not
/// comparable inside a common upset.
class IncompatibleError : public Error {
 public:
  using Error::Error;
};

/// An exploration needed more nodes than its budget allows.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mbird
