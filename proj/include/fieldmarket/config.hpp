#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/field_engine.hpp"
#include "fieldmarket/info_space.hpp"

namespace fieldmarket {

enum class OutputFormat { csv, json };

/// Everything a CLI run can be configured with. Config files are
/// `key=value` lines with `#` comments; command-line flags override them.
struct RunConfig {
  double k_b = 1.0;
  double distance_floor = kDefaultDistanceFloor;
  double mass = 1.0;
  double dt = 1.0;
  ReferenceRule reference_rule = ReferenceRule::rolling_min(20);
  double tick = 1.0;
  double R = 1.0;
  double q0 = 1.0;  ///< probe charge for `work`
  std::optional<double> initial_price;
  NormalizationMethod normalize = NormalizationMethod::identity;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;  ///< recorded only; nothing is stochastic yet

  std::string assets;
  std::string points;
  std::string path;
  std::string bars;
  std::string book;
  std::string scenario;

  FieldParams field_params() const { return {k_b, distance_floor}; }
  PotentialModel potential_model() const { return {mass, reference_rule}; }

  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Applies one `key=value` assignment. Throws unknown_key / bad_value.
void apply_config_value(RunConfig& config, std::string_view key, std::string_view value);

RunConfig parse_config(std::string_view text, std::string_view source = "config");
RunConfig load_config(const std::string& path);

/// Canonical `key=value` listing of every key; parse_config(dump) == config.
std::string dump_config(const RunConfig& config);

}  // namespace fieldmarket
