#pragma once

// Assets as charged points in a normalized information feature space.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fieldmarket {

/// A point in information space. Always nonempty with finite coordinates.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> values);
  FeatureVector(std::initializer_list<double> values)
      : FeatureVector(std::vector<double>(values)) {}

  std::size_t dimension() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

/// A source or probe of the information field. `magnitude` is the charge.
struct InformationCharge {
  std::string asset_id;
  FeatureVector position;
  double magnitude = 0.0;

  InformationCharge(std::string id, FeatureVector pos, double charge);
};

enum class NormalizationMethod { zscore, minmax, identity };

std::string to_string(NormalizationMethod method);
NormalizationMethod parse_normalization_method(std::string_view text);

/// Per-feature affine map: coordinate_i = (raw_i - center_i) / scale_i.
struct NormalizationSpec {
  NormalizationMethod method = NormalizationMethod::identity;
  std::vector<double> centers;
  std::vector<double> scales;

  std::size_t dimension() const noexcept { return centers.size(); }

  static NormalizationSpec identity(std::size_t dimension);

  // zscore uses the population standard deviation; minmax maps the sample
  // range onto [0, 1]. A constant column has no usable scale and is
  // rejected with ErrorKind::zero_scale.
  static NormalizationSpec fit(NormalizationMethod method,
                               std::span<const std::vector<double>> samples);
};

FeatureVector normalize_features(std::span<const double> raw,
                                 const NormalizationSpec& spec);

/// Euclidean distance. No singularity floor is applied here.
double info_distance(const FeatureVector& a, const FeatureVector& b);

/// Compensated sum of source magnitudes.
double total_charge(std::span<const InformationCharge> sources);

void require_same_dimension(std::size_t expected, std::size_t actual,
                            std::string_view what);

}  // namespace fieldmarket
