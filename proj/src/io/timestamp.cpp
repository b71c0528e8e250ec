#include "fieldmarket/timestamp.hpp"

#include <chrono>
#include <cstdio>

#include "fieldmarket/error.hpp"

namespace fieldmarket {

namespace {

bool read_digits(std::string_view text, std::size_t at, std::size_t count, int& value) {
  if (at + count > text.size()) return false;
  value = 0;
  for (std::size_t i = at; i < at + count; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    value = value * 10 + (text[i] - '0');
  }
  return true;
}

[[noreturn]] void bad_timestamp(std::string_view text) {
  fail(ErrorKind::bad_value, "invalid ISO-8601 timestamp '" + std::string(text) + "'");
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
  namespace chr = std::chrono;
  int year = 0, month = 0, day = 0;
  if (!read_digits(text, 0, 4, year) || text.size() < 10 || text[4] != '-' ||
      !read_digits(text, 5, 2, month) || text[7] != '-' || !read_digits(text, 8, 2, day)) {
    bad_timestamp(text);
  }
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) bad_timestamp(text);
  const std::int64_t days = chr::sys_days{ymd}.time_since_epoch().count();

  if (text.size() == 10) return from_epoch_seconds(days * 86400, false);

  std::string_view rest = text.substr(10);
  if (rest.back() == 'Z') rest.remove_suffix(1);
  int hour = 0, minute = 0, second = 0;
  if (rest.size() < 6 || (rest[0] != 'T' && rest[0] != ' ') || !read_digits(rest, 1, 2, hour) ||
      rest[3] != ':' || !read_digits(rest, 4, 2, minute)) {
    bad_timestamp(text);
  }
  if (rest.size() == 9) {
    if (rest[6] != ':' || !read_digits(rest, 7, 2, second)) bad_timestamp(text);
  } else if (rest.size() != 6) {
    bad_timestamp(text);
  }
  if (hour > 23 || minute > 59 || second > 59) bad_timestamp(text);
  return from_epoch_seconds(days * 86400 + hour * 3600 + minute * 60 + second, true);
}

Timestamp Timestamp::from_epoch_seconds(std::int64_t seconds, bool has_time) {
  Timestamp t;
  t.seconds_ = seconds;
  t.has_time_ = has_time;
  return t;
}

std::string Timestamp::to_string() const {
  namespace chr = std::chrono;
  std::int64_t days = seconds_ / 86400;
  std::int64_t secs = seconds_ % 86400;
  if (secs < 0) {
    secs += 86400;
    --days;
  }
  const chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
  char buf[32];
  if (has_time_) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                  static_cast<int>(secs % 60));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  }
  return buf;
}

}  // namespace fieldmarket
