// Exception types shared by every teamlogic module.

#ifndef TEAMLOGIC_ERROR_HPP
#define TEAMLOGIC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamlogic {

  class Error: public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // Malformed formula text. `position` is a byte offset into the input.
  class ParseError: public Error {
  public:
    ParseError(std::string const& msg, std::size_t position):
      Error(msg + " at position " + std::to_string(position)), position_(position) {}
    auto position() const noexcept -> std::size_t { return position_; }
  private:
    std::size_t position_;
  };

  // Proposition symbol unknown to a context, or objects built over different contexts.
  class ContextError: public Error {
  public:
    using Error::Error;
  };

  // An exhaustive enumeration would exceed its configured bound.
  class BoundError: public Error {
  public:
    using Error::Error;
  };

  // A structurally malformed document, such as a proof file that does not follow the schema.
  class FormatError: public Error {
  public:
    using Error::Error;
  };

  // An operation was called outside its precondition (non-member formula, non-closed property, ...).
  class PreconditionError: public Error {
  public:
    using Error::Error;
  };

}

#endif // TEAMLOGIC_ERROR_HPP
