#pragma once

// Kinetic / potential decomposition of a price series.
//
//   velocity_t  = (close_t - close_{t-1}) / dt,   velocity_0 = 0
//   kinetic_t   = mass * velocity_t^2 / 2
//   potential_t = mass * max(close_t - reference_t, 0)
//
// reference_t is either a fixed level or the minimum close over the trailing
// `window` bars including t (the support level).

#include <span>
#include <vector>

#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/timestamp.hpp"

namespace fieldmarket {

struct Bar {
  Timestamp timestamp;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;

  friend bool operator==(const Bar&, const Bar&) = default;
};

/// Checks positivity and low <= open, close <= high (ErrorKind::ohlc_violation).
void validate_bar(const Bar& bar);

/// Checks every bar plus strictly increasing timestamps.
void validate_series(std::span<const Bar> series);

std::vector<double> velocity_series(std::span<const Bar> series, double dt);

std::vector<double> kinetic_series(std::span<const Bar> series, const PotentialModel& model,
                                   double dt);

struct PotentialSeries {
  std::vector<double> energy;
  std::vector<double> reference;
  std::vector<bool> clamped;
};

/// A rolling window longer than the series uses every bar available so far.
PotentialSeries potential_series(std::span<const Bar> series, const PotentialModel& model);

struct EnergyPoint {
  Timestamp timestamp;
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double reference = 0.0;
  bool clamped = false;
  double kinetic_change = 0.0;    ///< kinetic_t - kinetic_{t-1}; 0 on the first bar
  double potential_change = 0.0;  ///< potential_t - potential_{t-1}; 0 on the first bar

  friend bool operator==(const EnergyPoint&, const EnergyPoint&) = default;
};

using EnergyTrace = std::vector<EnergyPoint>;

EnergyTrace energy_decomposition(std::span<const Bar> series, const PotentialModel& model,
                                 double dt);

/// Independent series decomposed in parallel, one series per task.
std::vector<EnergyTrace> energy_decomposition_batch(std::span<const std::vector<Bar>> batch,
                                                    const PotentialModel& model, double dt);

}  // namespace fieldmarket
