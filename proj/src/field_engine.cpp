#include "fieldmarket/field_engine.hpp"

#include <algorithm>
#include <cmath>

#include "fieldmarket/error.hpp"
#include "fieldmarket/kernels.hpp"
#include "source_layout.hpp"

namespace fieldmarket {

void FieldParams::validate() const {
  require_finite(coupling, "k_b");
  require_finite(distance_floor, "distance_floor");
  if (!(coupling > 0.0)) fail(ErrorKind::invalid_argument, "k_b must be positive");
  if (!(distance_floor > 0.0)) {
    fail(ErrorKind::invalid_argument, "distance_floor must be positive");
  }
}

FieldVector::FieldVector(std::vector<double> components)
    : components_(std::move(components)) {
  for (double c : components_) require_finite(c, "field component");
}

double FieldVector::magnitude() const noexcept {
  double ss = 0.0;
  for (double c : components_) ss += c * c;
  return std::sqrt(ss);
}

std::vector<double> FieldVector::direction() const {
  std::vector<double> unit(components_.size(), 0.0);
  const double m = magnitude();
  if (m == 0.0) return unit;
  for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = components_[i] / m;
  return unit;
}

FieldSample sample_field(std::span<const InformationCharge> sources,
                         const FeatureVector& point, const FieldParams& params) {
  params.validate();
  const detail::SourceLayout layout(sources, point.dimension());
  std::vector<double> out(point.dimension(), 0.0);
  const auto stats = kernels::omp::superpose(layout.block(), point.values(),
                                             {params.coupling, params.distance_floor}, out);
  for (double c : out) require_finite(c, "field sample");
  return {FieldVector(std::move(out)), stats.degenerate, stats.degenerate_magnitude};
}

FieldVector field_at(std::span<const InformationCharge> sources, const FeatureVector& point,
                     const FieldParams& params) {
  return sample_field(sources, point, params).field;
}

std::vector<FieldSample> field_at_points(std::span<const InformationCharge> sources,
                                         std::span<const FeatureVector> points,
                                         const FieldParams& params) {
  params.validate();
  if (points.empty()) return {};
  const std::size_t dim = points.front().dimension();
  const detail::SourceLayout layout(sources, dim);
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    require_same_dimension(dim, p.dimension(), "query point");
    flat.insert(flat.end(), p.values().begin(), p.values().end());
  }
  std::vector<double> out(flat.size());
  std::vector<std::size_t> degenerate(points.size());
  kernels::omp::superpose_points(layout.block(), flat,
                                 {params.coupling, params.distance_floor}, out, degenerate);

  std::vector<FieldSample> samples;
  samples.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<double> row(out.begin() + p * dim, out.begin() + (p + 1) * dim);
    for (double c : row) require_finite(c, "field sample");
    double degenerate_magnitude = 0.0;
    if (degenerate[p] > 0) {
      for (const auto& s : sources) {
        if (info_distance(s.position, points[p]) < params.distance_floor) {
          degenerate_magnitude += field_magnitude(s.magnitude, 0.0, params);
        }
      }
    }
    samples.push_back({FieldVector(std::move(row)), degenerate[p], degenerate_magnitude});
  }
  return samples;
}

double field_magnitude(double total_charge, double r, const FieldParams& params) {
  params.validate();
  require_finite(total_charge, "charge");
  require_finite(r, "distance");
  if (total_charge < 0.0) fail(ErrorKind::negative_value, "charge must be nonnegative");
  if (r < 0.0) fail(ErrorKind::negative_value, "distance must be nonnegative");
  const double eff = std::max(r, params.distance_floor);
  return params.coupling * total_charge / (eff * eff);
}

FieldVector force_on(double probe_charge, const FieldVector& field) {
  require_finite(probe_charge, "probe charge");
  if (probe_charge < 0.0) fail(ErrorKind::negative_value, "probe charge must be nonnegative");
  std::vector<double> force(field.components().begin(), field.components().end());
  for (double& f : force) f *= probe_charge;
  return FieldVector(std::move(force));
}

double pairwise_force(double charge, double total_charge, double r,
                      const FieldParams& params) {
  require_finite(charge, "charge");
  if (charge < 0.0) fail(ErrorKind::negative_value, "charge must be nonnegative");
  return field_magnitude(total_charge, r, params) * charge;
}

std::vector<std::pair<double, double>> field_decay_profile(
    const InformationCharge& source, std::span<const double> r_values,
    const FieldParams& params) {
  if (r_values.empty()) fail(ErrorKind::empty_input, "decay profile needs at least one r");
  std::vector<std::pair<double, double>> profile;
  profile.reserve(r_values.size());
  for (double r : r_values) {
    require_finite(r, "distance");
    if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "decay profile distances must be positive");
    profile.emplace_back(r, field_magnitude(source.magnitude, r, params));
  }
  return profile;
}

}  // namespace fieldmarket
