#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor_quant {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (empty word where one letter is
/// required, n out of range, malformed subset, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// Malformed textual input (rational, word, subset selector).
class ParseError : public Error
{
public:
  using Error::Error;
};

/// A configured size cap would be exceeded. `requested` carries the count that
/// was refused so callers can report it.
class CapExceeded : public Error
{
public:
  CapExceeded(std::string const &what, std::string requested)
    : Error(what), requested_(std::move(requested))
  {
  }

  std::string const &requested() const noexcept { return requested_; }

private:
  std::string requested_;
};

} // namespace cantor_quant
