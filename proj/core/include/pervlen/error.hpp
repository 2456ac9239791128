#pragma once

#include <stdexcept>
#include <string>

namespace pervlen {

// Two operands live in different quadratic fields Q(sqrt(d)) != Q(sqrt(e)).
class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A construction would need more than one quadratic extension of Q.
class Unrepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation would enumerate more pieces than its configured bound.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed text input. `where` names the line or field at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace pervlen
