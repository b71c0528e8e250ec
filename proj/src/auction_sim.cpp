#include "fieldmarket/auction_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fieldmarket/error.hpp"
#include "fieldmarket/kernels.hpp"

namespace fieldmarket {

std::string to_string(Side side) { return side == Side::buy ? "buy" : "sell"; }

Side parse_side(std::string_view text) {
  if (text == "buy" || text == "BUY" || text == "b") return Side::buy;
  if (text == "sell" || text == "SELL" || text == "s") return Side::sell;
  fail(ErrorKind::bad_value, "order side must be buy or sell, got '" + std::string(text) + "'");
}

Order Order::market(Side side, std::int64_t quantity) {
  Order o{side, std::nullopt, quantity};
  o.validate();
  return o;
}

Order Order::limit_order(Side side, double limit, std::int64_t quantity) {
  Order o{side, limit, quantity};
  o.validate();
  return o;
}

void Order::validate() const {
  if (quantity < 1) fail(ErrorKind::invalid_argument, "order quantity must be >= 1");
  if (limit) {
    require_finite(*limit, "limit price");
    if (!(*limit > 0.0)) fail(ErrorKind::invalid_argument, "limit price must be positive");
  }
}

namespace {

struct SideBook {
  std::vector<double> limits;
  std::vector<std::int64_t> quantities;
  std::int64_t market = 0;
};

// Splits one side of the book; `snap` maps a limit price to its grid key.
template <class Snap>
SideBook collect(std::span<const Order> orders, Side side, Snap&& snap) {
  SideBook book;
  for (const auto& o : orders) {
    o.validate();
    if (o.side != side) continue;
    if (o.is_market()) {
      book.market += o.quantity;
    } else {
      book.limits.push_back(snap(*o.limit));
      book.quantities.push_back(o.quantity);
    }
  }
  return book;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) fail(ErrorKind::empty_input, "price grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_finite(grid[i], "grid price");
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      fail(ErrorKind::invalid_argument, "price grid must be strictly ascending");
    }
  }
}

std::vector<CurvePoint> to_curve(std::span<const double> grid,
                                 const std::vector<std::int64_t>& qty) {
  std::vector<CurvePoint> curve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) curve[g] = {grid[g], qty[g]};
  return curve;
}

auto identity_snap = [](double x) { return x; };

}  // namespace

std::vector<CurvePoint> aggregate_demand(std::span<const Order> orders,
                                         std::span<const double> price_grid) {
  check_grid(price_grid);
  const auto book = collect(orders, Side::buy, identity_snap);
  std::vector<std::int64_t> qty(price_grid.size());
  kernels::omp::cumulative_buy(book.limits, book.quantities, book.market, price_grid, qty);
  return to_curve(price_grid, qty);
}

std::vector<CurvePoint> aggregate_supply(std::span<const Order> orders,
                                         std::span<const double> price_grid) {
  check_grid(price_grid);
  const auto book = collect(orders, Side::sell, identity_snap);
  std::vector<std::int64_t> qty(price_grid.size());
  kernels::omp::cumulative_sell(book.limits, book.quantities, book.market, price_grid, qty);
  return to_curve(price_grid, qty);
}

ClearingResult clear_auction(std::span<const Order> orders, double prev_price, double tick) {
  require_finite(prev_price, "previous price");
  require_finite(tick, "tick");
  if (!(tick > 0.0)) fail(ErrorKind::invalid_argument, "tick must be positive");
  if (!(prev_price > 0.0)) fail(ErrorKind::invalid_argument, "previous price must be positive");

  // Prices are handled as integral tick counts stored in doubles.
  const auto snap = [tick](double price) { return std::round(price / tick); };
  const auto buys = collect(orders, Side::buy, snap);
  const auto sells = collect(orders, Side::sell, snap);

  std::vector<double> levels = buys.limits;
  levels.insert(levels.end(), sells.limits.begin(), sells.limits.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  ClearingResult result;
  if (levels.empty()) {
    const std::int64_t volume = std::min(buys.market, sells.market);
    if (volume > 0) {
      result = {snap(prev_price) * tick, volume, buys.market, sells.market, true};
    }
    return result;
  }

  std::vector<std::int64_t> demand(levels.size());
  std::vector<std::int64_t> supply(levels.size());
  kernels::omp::cumulative_buy(buys.limits, buys.quantities, buys.market, levels, demand);
  kernels::omp::cumulative_sell(sells.limits, sells.quantities, sells.market, levels, supply);

  // Between two adjacent levels demand equals the upper level's and supply
  // the lower level's, so each gap is a single candidate volume.
  std::int64_t best_volume = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    best_volume = std::max(best_volume, std::min(demand[i], supply[i]));
    if (i + 1 < levels.size() && levels[i + 1] - levels[i] >= 2.0) {
      best_volume = std::max(best_volume, std::min(demand[i + 1], supply[i]));
    }
  }
  if (best_volume == 0) return result;

  const double prev_ticks = prev_price / tick;
  double best_key = 0.0;
  double best_distance = 0.0;
  std::int64_t best_demand = 0;
  std::int64_t best_supply = 0;
  bool found = false;
  const auto consider = [&](double key, std::int64_t d, std::int64_t s) {
    const double distance = std::abs(key * tick - prev_price);
    if (!found || distance < best_distance || (distance == best_distance && key < best_key)) {
      found = true;
      best_key = key;
      best_distance = distance;
      best_demand = d;
      best_supply = s;
    }
  };
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (std::min(demand[i], supply[i]) == best_volume) consider(levels[i], demand[i], supply[i]);
    if (i + 1 < levels.size() && levels[i + 1] - levels[i] >= 2.0 &&
        std::min(demand[i + 1], supply[i]) == best_volume) {
      const double lo = levels[i] + 1.0;
      const double hi = levels[i + 1] - 1.0;
      const double below = std::floor(prev_ticks);
      consider(std::clamp(below, lo, hi), demand[i + 1], supply[i]);
      consider(std::clamp(below + 1.0, lo, hi), demand[i + 1], supply[i]);
    }
  }

  result.clearing_price = best_key * tick;
  result.executed_volume = best_volume;
  result.demand_at_price = best_demand;
  result.supply_at_price = best_supply;
  result.crossed = true;
  return result;
}

StepResult step(const MarketState& state, std::span<const Order> order_flow, double tick,
                double request_force, double cumulative_work) {
  require_finite(request_force, "request force");
  StepResult out{state, {}};
  out.record.cumulative_work = cumulative_work;

  double prev = 0.0;
  if (state.price) {
    prev = *state.price;
  } else {
    // No established rate yet: anchor the tie-break at the middle of the
    // book's limit range.
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& o : order_flow) {
      if (o.is_market()) continue;
      lo = any ? std::min(lo, *o.limit) : *o.limit;
      hi = any ? std::max(hi, *o.limit) : *o.limit;
      any = true;
    }
    if (!any) return out;
    prev = 0.5 * (lo + hi);
  }

  const auto cleared = clear_auction(order_flow, prev, tick);
  out.record.volume = cleared.executed_volume;
  if (cleared.crossed) {
    const double new_price = *cleared.clearing_price;
    out.record.delta_p = state.price ? new_price - *state.price : 0.0;
    out.state.price = new_price;
  }
  out.record.price = out.state.price;
  out.record.work = market_work(request_force, out.record.delta_p);
  out.record.cumulative_work = cumulative_work + out.record.work;
  return out;
}

SimulationTrace run_scenario(const ScenarioConfig& config, std::span<const ScenarioDay> days) {
  if (config.initial_price) {
    require_finite(*config.initial_price, "initial price");
    if (!(*config.initial_price > 0.0)) {
      fail(ErrorKind::invalid_argument, "initial price must be positive");
    }
  }
  std::map<std::int64_t, std::vector<Order>> by_day;
  for (const auto& d : days) {
    auto& slot = by_day[d.day];
    slot.insert(slot.end(), d.orders.begin(), d.orders.end());
  }

  SimulationTrace trace;
  trace.reserve(by_day.size());
  MarketState state{config.asset, config.initial_price};
  double cumulative = 0.0;
  for (const auto& [day, orders] : by_day) {
    auto [next, record] = step(state, orders, config.tick, config.request_force, cumulative);
    record.day = day;
    cumulative = record.cumulative_work;
    trace.push_back(record);
    state = std::move(next);
  }
  return trace;
}

}  // namespace fieldmarket
