#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fieldmarket {

// Every failure the library reports carries one of these kinds. The CLI
// prints them as `error[<kind>]: <message>`.
enum class ErrorKind {
  dimension_mismatch,
  non_finite,
  zero_scale,
  negative_value,
  invalid_argument,
  below_floor,
  degenerate_path,
  empty_input,
  malformed_row,
  ohlc_violation,
  non_monotonic,
  unknown_key,
  bad_value,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

void require_finite(double value, std::string_view what);

}  // namespace fieldmarket
