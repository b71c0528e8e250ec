#include "fieldmarket/config.hpp"

#include <charconv>
#include <cmath>

#include "fieldmarket/error.hpp"
#include "fieldmarket/io.hpp"

namespace fieldmarket {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double to_real(std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() ||
      !std::isfinite(x)) {
    fail(ErrorKind::bad_value,
         std::string(key) + " expects a number, got '" + std::string(value) + "'");
  }
  return x;
}

std::string render(double x) {
  // Shortest round-trip text so that dump -> parse is exact.
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

void require_positive(double x, std::string_view key) {
  if (!(x > 0.0)) fail(ErrorKind::bad_value, std::string(key) + " must be positive");
}

}  // namespace

void RunConfig::validate() const {
  require_positive(k_b, "k_b");
  require_positive(distance_floor, "distance_floor");
  require_positive(mass, "mass");
  require_positive(dt, "dt");
  require_positive(tick, "tick");
  if (R < 0.0) fail(ErrorKind::bad_value, "R must be nonnegative");
  if (q0 < 0.0) fail(ErrorKind::bad_value, "q0 must be nonnegative");
  if (initial_price) require_positive(*initial_price, "initial_price");
}

void apply_config_value(RunConfig& c, std::string_view key, std::string_view value) {
  const auto text = std::string(value);
  if (key == "k_b") c.k_b = to_real(key, value);
  else if (key == "distance_floor") c.distance_floor = to_real(key, value);
  else if (key == "mass") c.mass = to_real(key, value);
  else if (key == "dt") c.dt = to_real(key, value);
  else if (key == "tick") c.tick = to_real(key, value);
  else if (key == "R") c.R = to_real(key, value);
  else if (key == "q0") c.q0 = to_real(key, value);
  else if (key == "reference_rule") c.reference_rule = ReferenceRule::parse(value);
  else if (key == "initial_price") {
    c.initial_price = value.empty() ? std::nullopt : std::optional(to_real(key, value));
  } else if (key == "normalize") c.normalize = parse_normalization_method(value);
  else if (key == "format") {
    if (value == "csv") c.format = OutputFormat::csv;
    else if (value == "json") c.format = OutputFormat::json;
    else fail(ErrorKind::bad_value, "format must be csv or json, got '" + text + "'");
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
      fail(ErrorKind::bad_value, "seed expects a nonnegative integer, got '" + text + "'");
    }
    c.seed = s;
  } else if (key == "assets") c.assets = text;
  else if (key == "points") c.points = text;
  else if (key == "path") c.path = text;
  else if (key == "bars") c.bars = text;
  else if (key == "book") c.book = text;
  else if (key == "scenario") c.scenario = text;
  else fail(ErrorKind::unknown_key, "unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig config;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const std::string at = std::string(source) + ":" + std::to_string(line) + ": ";
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::bad_value, at + "expected key=value, got '" + std::string(raw) + "'");
    }
    try {
      apply_config_value(config, trim(raw.substr(0, eq)), trim(raw.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(e.kind(), at + e.what());
    }
  }
  try {
    config.validate();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(source) + ": " + e.what());
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  return parse_config(io::read_file(path), path);
}

std::string dump_config(const RunConfig& c) {
  std::string out;
  const auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("k_b", render(c.k_b));
  line("distance_floor", render(c.distance_floor));
  line("mass", render(c.mass));
  line("dt", render(c.dt));
  line("reference_rule", c.reference_rule.to_string());
  line("tick", render(c.tick));
  line("R", render(c.R));
  line("q0", render(c.q0));
  line("initial_price", c.initial_price ? render(*c.initial_price) : "");
  line("normalize", to_string(c.normalize));
  line("format", c.format == OutputFormat::csv ? "csv" : "json");
  line("seed", std::to_string(c.seed));
  line("assets", c.assets);
  line("points", c.points);
  line("path", c.path);
  line("bars", c.bars);
  line("book", c.book);
  line("scenario", c.scenario);
  return out;
}

}  // namespace fieldmarket
