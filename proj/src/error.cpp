#include "fieldmarket/error.hpp"

#include <cmath>

namespace fieldmarket {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::zero_scale: return "zero_scale";
    case ErrorKind::negative_value: return "negative_value";
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::below_floor: return "below_floor";
    case ErrorKind::degenerate_path: return "degenerate_path";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::malformed_row: return "malformed_row";
    case ErrorKind::ohlc_violation: return "ohlc_violation";
    case ErrorKind::non_monotonic: return "non_monotonic";
    case ErrorKind::unknown_key: return "unknown_key";
    case ErrorKind::bad_value: return "bad_value";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

void require_finite(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::non_finite, std::string(what) + " is not finite");
  }
}

}  // namespace fieldmarket
