#pragma once

// Single-price call auction and a day-by-day equilibrium price simulator.
//
// Buy orders aggregate from the highest limit down, sell orders from the
// lowest limit up. The clearing price maximizes min(demand, supply) over the
// tick grid spanning the book's limit prices; ties go to the price closest
// to the previous price, then to the lower price.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fieldmarket/energy_engine.hpp"

namespace fieldmarket {

enum class Side { buy, sell };

std::string to_string(Side side);
Side parse_side(std::string_view text);

struct Order {
  Side side = Side::buy;
  std::optional<double> limit;  ///< empty for market orders
  std::int64_t quantity = 0;

  static Order market(Side side, std::int64_t quantity);
  static Order limit_order(Side side, double limit, std::int64_t quantity);

  bool is_market() const noexcept { return !limit.has_value(); }
  void validate() const;
};

struct CurvePoint {
  double price = 0.0;
  std::int64_t quantity = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Cumulative buy quantity with limit >= p at each grid price. Market buys
/// count at every price. The grid must be nonempty, ascending and distinct.
std::vector<CurvePoint> aggregate_demand(std::span<const Order> orders,
                                         std::span<const double> price_grid);

/// Cumulative sell quantity with limit <= p at each grid price.
std::vector<CurvePoint> aggregate_supply(std::span<const Order> orders,
                                         std::span<const double> price_grid);

struct ClearingResult {
  std::optional<double> clearing_price;
  std::int64_t executed_volume = 0;
  std::int64_t demand_at_price = 0;
  std::int64_t supply_at_price = 0;
  bool crossed = false;

  friend bool operator==(const ClearingResult&, const ClearingResult&) = default;
};

/// Limit prices are snapped to the nearest multiple of `tick` before
/// aggregation. A book with market orders on both sides and no limits
/// clears at prev_price snapped to the tick.
ClearingResult clear_auction(std::span<const Order> orders, double prev_price, double tick);

struct MarketState {
  std::string asset;
  std::optional<double> price;  ///< empty until the first crossing auction
};

struct TraceRecord {
  std::int64_t day = 0;
  std::optional<double> price;
  std::int64_t volume = 0;
  double delta_p = 0.0;
  double work = 0.0;
  double cumulative_work = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using SimulationTrace = std::vector<TraceRecord>;

struct StepResult {
  MarketState state;
  TraceRecord record;
};

/// One auction round. A crossing book moves the price; the record carries
/// delta_p and the market work R * delta_p. If no price has been
/// established yet, the first crossing sets it with delta_p = 0.
StepResult step(const MarketState& state, std::span<const Order> order_flow, double tick,
                double request_force, double cumulative_work = 0.0);

struct ScenarioDay {
  std::int64_t day = 0;
  std::vector<Order> orders;
};

struct ScenarioConfig {
  std::string asset = "X";
  double tick = 1.0;
  double request_force = 1.0;
  std::optional<double> initial_price;
};

/// Replays days in ascending order.
SimulationTrace run_scenario(const ScenarioConfig& config, std::span<const ScenarioDay> days);

}  // namespace fieldmarket
