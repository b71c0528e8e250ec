#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fieldmarket {

/// ISO-8601 date or date-time, UTC. Dates render as `YYYY-MM-DD`,
/// date-times as `YYYY-MM-DDTHH:MM:SS`.
class Timestamp {
 public:
  Timestamp() = default;

  /// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS][Z]` (a space may replace
  /// the `T`). Throws Error(bad_value) on anything else.
  static Timestamp parse(std::string_view text);
  static Timestamp from_epoch_seconds(std::int64_t seconds, bool has_time);

  std::int64_t epoch_seconds() const noexcept { return seconds_; }
  bool has_time() const noexcept { return has_time_; }
  std::string to_string() const;

  friend bool operator==(const Timestamp& a, const Timestamp& b) noexcept {
    return a.seconds_ == b.seconds_ && a.has_time_ == b.has_time_;
  }
  friend std::strong_ordering operator<=>(const Timestamp& a, const Timestamp& b) noexcept {
    return a.seconds_ <=> b.seconds_;
  }

 private:
  std::int64_t seconds_ = 0;
  bool has_time_ = false;
};

}  // namespace fieldmarket
