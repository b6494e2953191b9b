#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace abcover {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in lattices of different rank.
class dimension_error : public error {
 public:
  using error::error;
};

/// Input is outside the range the toolkit is certified for (k > 4,
/// uncurated curves, moving base classes, ...).
class unsupported_error : public error {
 public:
  using error::error;
};

/// Building data that cannot be correct, e.g. an odd L.(L+K).
class corrupt_data_error : public error {
 public:
  using error::error;
};

/// Random point configuration of the interpolation oracle was special.
class degenerate_configuration : public error {
 public:
  using error::error;
};

/// Declared geometry contradicts the generic-position model.
class generic_position_error : public error {
 public:
  using error::error;
};

/// Malformed document or expression; `where` names the location.
class parse_error : public error {
 public:
  parse_error(std::string where, const std::string& what)
      : error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace abcover
