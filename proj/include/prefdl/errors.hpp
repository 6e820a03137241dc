#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prefdl {

// Malformed source text. `position` is a 0-based character offset into the
// input that was being parsed.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Violated semantic precondition: undeclared symbol, empty world set,
// vacuous revision, exceeded enumeration cap, unknown operator, and so on.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace prefdl
