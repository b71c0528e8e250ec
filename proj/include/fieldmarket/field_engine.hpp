#pragma once

// Inverse-square information field and the forces it exerts.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fieldmarket/info_space.hpp"

namespace fieldmarket {

inline constexpr double kDefaultDistanceFloor = 1e-6;

struct FieldParams {
  double coupling = 1.0;  ///< k_b; the permittivity analogue is folded in.
  double distance_floor = kDefaultDistanceFloor;

  void validate() const;
};

/// Field intensity (or force) in feature-space components.
class FieldVector {
 public:
  FieldVector() = default;
  explicit FieldVector(std::vector<double> components);

  std::size_t dimension() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }
  double magnitude() const noexcept;

  /// Unit vector along the field; all zeros for the zero vector.
  std::vector<double> direction() const;

 private:
  std::vector<double> components_;
};

/// A field value plus the sources that sat within the distance floor of
/// the point. Those contribute coupling*q/floor^2 in magnitude but no
/// direction, so they are reported separately.
struct FieldSample {
  FieldVector field;
  std::size_t degenerate_sources = 0;
  double degenerate_magnitude = 0.0;
};

FieldSample sample_field(std::span<const InformationCharge> sources,
                         const FeatureVector& point, const FieldParams& params);

FieldVector field_at(std::span<const InformationCharge> sources, const FeatureVector& point,
                     const FieldParams& params);

/// Field at many points; evaluated in parallel, one point per task.
std::vector<FieldSample> field_at_points(std::span<const InformationCharge> sources,
                                         std::span<const FeatureVector> points,
                                         const FieldParams& params);

/// k_b * Q / max(r, floor)^2.
double field_magnitude(double total_charge, double r, const FieldParams& params);

/// The request force R = a * E.
FieldVector force_on(double probe_charge, const FieldVector& field);

/// k_b * q_i * Q / max(r, floor)^2, identical to field_magnitude(Q, r) * q_i.
double pairwise_force(double charge, double total_charge, double r,
                      const FieldParams& params);

std::vector<std::pair<double, double>> field_decay_profile(
    const InformationCharge& source, std::span<const double> r_values,
    const FieldParams& params);

}  // namespace fieldmarket
