#include "fieldmarket/series_energy.hpp"

#include <cmath>
#include <exception>

#include "fieldmarket/error.hpp"
#include "fieldmarket/kernels.hpp"

namespace fieldmarket {

void validate_bar(const Bar& bar) {
  for (double x : {bar.open, bar.high, bar.low, bar.close, bar.volume}) {
    require_finite(x, "bar field");
  }
  const std::string at = " at " + bar.timestamp.to_string();
  if (!(bar.open > 0.0 && bar.high > 0.0 && bar.low > 0.0 && bar.close > 0.0)) {
    fail(ErrorKind::ohlc_violation, "prices must be positive" + at);
  }
  if (bar.volume < 0.0) fail(ErrorKind::ohlc_violation, "volume must be nonnegative" + at);
  if (bar.low > bar.high) fail(ErrorKind::ohlc_violation, "low exceeds high" + at);
  if (bar.open < bar.low || bar.open > bar.high || bar.close < bar.low ||
      bar.close > bar.high) {
    fail(ErrorKind::ohlc_violation, "open/close outside [low, high]" + at);
  }
}

void validate_series(std::span<const Bar> series) {
  for (std::size_t t = 0; t < series.size(); ++t) {
    validate_bar(series[t]);
    if (t > 0 && !(series[t - 1].timestamp < series[t].timestamp)) {
      fail(ErrorKind::non_monotonic,
           "timestamps not strictly increasing at " + series[t].timestamp.to_string());
    }
  }
}

namespace {

void require_series(std::span<const Bar> series) {
  if (series.empty()) fail(ErrorKind::empty_input, "price series is empty");
}

void require_dt(double dt) {
  require_finite(dt, "dt");
  if (!(dt > 0.0)) fail(ErrorKind::invalid_argument, "dt must be positive");
}

}  // namespace

std::vector<double> velocity_series(std::span<const Bar> series, double dt) {
  require_series(series);
  require_dt(dt);
  std::vector<double> v(series.size(), 0.0);
  for (std::size_t t = 1; t < series.size(); ++t) {
    v[t] = (series[t].close - series[t - 1].close) / dt;
  }
  return v;
}

std::vector<double> kinetic_series(std::span<const Bar> series, const PotentialModel& model,
                                   double dt) {
  model.validate();
  auto k = velocity_series(series, dt);
  for (double& x : k) x = 0.5 * model.mass * x * x;
  return k;
}

PotentialSeries potential_series(std::span<const Bar> series, const PotentialModel& model) {
  require_series(series);
  model.validate();
  const std::size_t n = series.size();
  PotentialSeries out{std::vector<double>(n), std::vector<double>(n), std::vector<bool>(n)};
  if (model.reference.kind == ReferenceRule::Kind::fixed) {
    std::fill(out.reference.begin(), out.reference.end(), model.reference.level);
  } else {
    std::vector<double> closes(n);
    for (std::size_t t = 0; t < n; ++t) closes[t] = series[t].close;
    kernels::omp::rolling_min(closes, model.reference.window, out.reference);
  }
  for (std::size_t t = 0; t < n; ++t) {
    const double gap = series[t].close - out.reference[t];
    out.clamped[t] = gap < 0.0;
    out.energy[t] = out.clamped[t] ? 0.0 : model.mass * gap;
  }
  return out;
}

EnergyTrace energy_decomposition(std::span<const Bar> series, const PotentialModel& model,
                                 double dt) {
  const auto kinetic = kinetic_series(series, model, dt);
  const auto potential = potential_series(series, model);
  EnergyTrace trace(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    auto& p = trace[t];
    p.timestamp = series[t].timestamp;
    p.kinetic = kinetic[t];
    p.potential = potential.energy[t];
    p.total = p.kinetic + p.potential;
    p.reference = potential.reference[t];
    p.clamped = potential.clamped[t];
    if (t > 0) {
      p.kinetic_change = p.kinetic - trace[t - 1].kinetic;
      p.potential_change = p.potential - trace[t - 1].potential;
    }
  }
  return trace;
}

std::vector<EnergyTrace> energy_decomposition_batch(std::span<const std::vector<Bar>> batch,
                                                    const PotentialModel& model, double dt) {
  std::vector<EnergyTrace> out(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = energy_decomposition(batch[i], model, dt);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace fieldmarket
