#pragma once

#include <stdexcept>
#include <string>

namespace relequiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: cyclotomic literals, group-spec files.
class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                         : what),
          message_(what),
          line_(line),
          column_(column) {}

    /// The message without the position suffix.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// Bad arguments to an arithmetic or algebraic operation (division by zero,
/// unmet preconditions such as a non K-invariant input to a projector).
class InvalidInput : public Error {
   public:
    using Error::Error;
};

/// The generators do not describe a finite graded group.
class GroupError : public Error {
   public:
    using Error::Error;
};

/// A user-tunable bound was too small; rerunning with a larger bound may help.
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// Two computations that must agree did not. Indicates a bug or inconsistent input.
class InconsistencyError : public Error {
   public:
    using Error::Error;
};

}  // namespace relequiv
