#include <charconv>
#include <cmath>

#include "fieldmarket/error.hpp"
#include "fieldmarket/io.hpp"

namespace fieldmarket::io {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Row> split_rows(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (trim(raw).empty()) continue;
    Row row{line, {}};
    std::size_t start = 0;
    while (true) {
      const auto comma = raw.find(',', start);
      row.fields.push_back(trim(raw.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::string where(std::string_view source, std::size_t line, std::size_t column) {
  return where(source, line) + ":" + std::to_string(column);
}

[[noreturn]] void malformed(std::string_view source, const Row& row, std::size_t column,
                            const std::string& what) {
  fail(ErrorKind::malformed_row, where(source, row.line, column) + ": " + what);
}

double parse_real(std::string_view source, const Row& row, std::size_t column) {
  const auto text = row.fields[column];
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    malformed(source, row, column + 1, "expected a finite number, got '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_integer(std::string_view source, const Row& row, std::size_t column) {
  const auto text = row.fields[column];
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    malformed(source, row, column + 1, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

void expect_width(std::string_view source, const Row& row, std::size_t width) {
  if (row.fields.size() != width) {
    fail(ErrorKind::malformed_row, where(source, row.line) + ": expected " +
                                       std::to_string(width) + " fields, got " +
                                       std::to_string(row.fields.size()));
  }
}

void expect_header(std::string_view source, const std::vector<Row>& rows,
                   std::initializer_list<std::string_view> names) {
  if (rows.empty()) fail(ErrorKind::malformed_row, std::string(source) + ": missing header");
  const Row& header = rows.front();
  std::size_t i = 0;
  for (auto name : names) {
    if (i >= header.fields.size() || header.fields[i] != name) {
      malformed(source, header, i + 1, "expected header column '" + std::string(name) + "'");
    }
    ++i;
  }
}

// Re-raises a domain error with the row's location in front.
template <class F>
auto at_row(std::string_view source, const Row& row, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), where(source, row.line) + ": " + e.what());
  }
}

Order parse_order(std::string_view source, const Row& row, std::size_t first) {
  Side side;
  try {
    side = parse_side(row.fields[first]);
  } catch (const Error&) {
    malformed(source, row, first + 1,
              "expected 'buy' or 'sell', got '" + std::string(row.fields[first]) + "'");
  }
  const std::int64_t qty = parse_integer(source, row, first + 2);
  if (row.fields[first + 1].empty()) {
    return at_row(source, row, [&] { return Order::market(side, qty); });
  }
  const double limit = parse_real(source, row, first + 1);
  return at_row(source, row, [&] { return Order::limit_order(side, limit, qty); });
}

}  // namespace

std::vector<AssetRow> parse_assets_csv(std::string_view text, std::string_view source) {
  const auto rows = split_rows(text);
  expect_header(source, rows, {"asset_id", "charge"});
  const std::size_t width = rows.front().fields.size();
  if (width < 3) {
    malformed(source, rows.front(), 3, "at least one feature column is required");
  }
  std::vector<AssetRow> assets;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(source, row, width);
    if (row.fields[0].empty()) malformed(source, row, 1, "empty asset_id");
    AssetRow a{std::string(row.fields[0]), parse_real(source, row, 1), {}};
    if (a.charge < 0.0) {
      fail(ErrorKind::negative_value, where(source, row.line, 2) + ": charge must be nonnegative");
    }
    for (std::size_t c = 2; c < width; ++c) a.features.push_back(parse_real(source, row, c));
    assets.push_back(std::move(a));
  }
  return assets;
}

std::vector<FeatureVector> parse_path_csv(std::string_view text, std::string_view source) {
  const auto rows = split_rows(text);
  if (rows.empty()) fail(ErrorKind::malformed_row, std::string(source) + ": missing header");
  const std::size_t width = rows.front().fields.size();
  std::vector<FeatureVector> vertices;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(source, rows[r], width);
    std::vector<double> v;
    for (std::size_t c = 0; c < width; ++c) v.push_back(parse_real(source, rows[r], c));
    vertices.emplace_back(std::move(v));
  }
  return vertices;
}

std::vector<Bar> parse_ohlcv_csv(std::string_view text, std::string_view source) {
  const auto rows = split_rows(text);
  expect_header(source, rows, {"timestamp", "open", "high", "low", "close", "volume"});
  expect_width(source, rows.front(), 6);
  std::vector<Bar> bars;
  bars.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(source, row, 6);
    Bar bar;
    try {
      bar.timestamp = Timestamp::parse(row.fields[0]);
    } catch (const Error& e) {
      malformed(source, row, 1, e.what());
    }
    bar.open = parse_real(source, row, 1);
    bar.high = parse_real(source, row, 2);
    bar.low = parse_real(source, row, 3);
    bar.close = parse_real(source, row, 4);
    bar.volume = parse_real(source, row, 5);
    at_row(source, row, [&] { validate_bar(bar); });
    if (!bars.empty() && !(bars.back().timestamp < bar.timestamp)) {
      fail(ErrorKind::non_monotonic, where(source, row.line) + ": timestamp " +
                                         bar.timestamp.to_string() +
                                         " does not follow " + bars.back().timestamp.to_string());
    }
    bars.push_back(bar);
  }
  return bars;
}

std::string emit_ohlcv_csv(const std::vector<Bar>& bars) {
  std::string out = "timestamp,open,high,low,close,volume\n";
  for (const auto& b : bars) {
    out += b.timestamp.to_string();
    for (double x : {b.open, b.high, b.low, b.close, b.volume}) {
      out += ',';
      out += format_number(x);
    }
    out += '\n';
  }
  return out;
}

std::vector<Order> parse_book_csv(std::string_view text, std::string_view source) {
  const auto rows = split_rows(text);
  expect_header(source, rows, {"side", "limit_price", "quantity"});
  expect_width(source, rows.front(), 3);
  std::vector<Order> orders;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(source, rows[r], 3);
    orders.push_back(parse_order(source, rows[r], 0));
  }
  return orders;
}

std::vector<ScenarioDay> parse_scenario_csv(std::string_view text, std::string_view source) {
  const auto rows = split_rows(text);
  expect_header(source, rows, {"day", "side", "limit_price", "quantity"});
  expect_width(source, rows.front(), 4);
  std::vector<ScenarioDay> days;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(source, row, 4);
    const std::int64_t day = parse_integer(source, row, 0);
    Order order = parse_order(source, row, 1);
    if (days.empty() || days.back().day != day) days.push_back({day, {}});
    days.back().orders.push_back(order);
  }
  return days;
}

}  // namespace fieldmarket::io
