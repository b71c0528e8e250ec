#include "fieldmarket/info_space.hpp"

#include <algorithm>
#include <cmath>

#include "fieldmarket/error.hpp"

namespace fieldmarket {

FeatureVector::FeatureVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    fail(ErrorKind::dimension_mismatch, "feature vector must have dimension >= 1");
  }
  for (double v : values_) require_finite(v, "feature coordinate");
}

InformationCharge::InformationCharge(std::string id, FeatureVector pos,
                                     double charge)
    : asset_id(std::move(id)), position(std::move(pos)), magnitude(charge) {
  require_finite(magnitude, "charge magnitude");
  if (magnitude < 0.0) {
    fail(ErrorKind::negative_value,
         "charge magnitude of '" + asset_id + "' is negative");
  }
}

std::string to_string(NormalizationMethod method) {
  switch (method) {
    case NormalizationMethod::zscore: return "zscore";
    case NormalizationMethod::minmax: return "minmax";
    case NormalizationMethod::identity: return "identity";
  }
  return "identity";
}

NormalizationMethod parse_normalization_method(std::string_view text) {
  if (text == "zscore") return NormalizationMethod::zscore;
  if (text == "minmax") return NormalizationMethod::minmax;
  if (text == "identity") return NormalizationMethod::identity;
  fail(ErrorKind::bad_value,
       "unknown normalization method '" + std::string(text) + "'");
}

void require_same_dimension(std::size_t expected, std::size_t actual,
                            std::string_view what) {
  if (expected != actual) {
    fail(ErrorKind::dimension_mismatch,
         std::string(what) + ": expected dimension " + std::to_string(expected) +
             ", got " + std::to_string(actual));
  }
}

NormalizationSpec NormalizationSpec::identity(std::size_t dimension) {
  return {NormalizationMethod::identity, std::vector<double>(dimension, 0.0),
          std::vector<double>(dimension, 1.0)};
}

NormalizationSpec NormalizationSpec::fit(
    NormalizationMethod method, std::span<const std::vector<double>> samples) {
  if (samples.empty()) fail(ErrorKind::empty_input, "cannot fit normalization to no samples");
  const std::size_t dim = samples.front().size();
  if (dim == 0) fail(ErrorKind::dimension_mismatch, "samples have dimension 0");
  for (const auto& s : samples) {
    require_same_dimension(dim, s.size(), "normalization sample");
    for (double v : s) require_finite(v, "normalization sample");
  }
  if (method == NormalizationMethod::identity) return identity(dim);

  NormalizationSpec spec{method, std::vector<double>(dim), std::vector<double>(dim)};
  const double n = static_cast<double>(samples.size());
  for (std::size_t j = 0; j < dim; ++j) {
    if (method == NormalizationMethod::zscore) {
      double mean = 0.0;
      for (const auto& s : samples) mean += s[j];
      mean /= n;
      double ss = 0.0;
      for (const auto& s : samples) ss += (s[j] - mean) * (s[j] - mean);
      spec.centers[j] = mean;
      spec.scales[j] = std::sqrt(ss / n);
    } else {
      auto [lo, hi] = std::minmax_element(
          samples.begin(), samples.end(),
          [j](const auto& a, const auto& b) { return a[j] < b[j]; });
      spec.centers[j] = (*lo)[j];
      spec.scales[j] = (*hi)[j] - (*lo)[j];
    }
    if (!(spec.scales[j] > 0.0)) {
      fail(ErrorKind::zero_scale,
           "feature " + std::to_string(j + 1) + " is constant; scale would be zero");
    }
  }
  return spec;
}

FeatureVector normalize_features(std::span<const double> raw,
                                 const NormalizationSpec& spec) {
  if (spec.centers.size() != spec.scales.size()) {
    fail(ErrorKind::dimension_mismatch, "normalization spec centers/scales differ in length");
  }
  require_same_dimension(spec.dimension(), raw.size(), "normalize_features");
  for (double v : raw) require_finite(v, "raw feature");

  std::vector<double> out(raw.begin(), raw.end());
  if (spec.method == NormalizationMethod::identity) return FeatureVector(std::move(out));
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (!(spec.scales[j] > 0.0)) {
      fail(ErrorKind::zero_scale, "normalization scale of feature " +
                                      std::to_string(j + 1) + " is not positive");
    }
    out[j] = (raw[j] - spec.centers[j]) / spec.scales[j];
  }
  return FeatureVector(std::move(out));
}

double info_distance(const FeatureVector& a, const FeatureVector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "info_distance");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    ss += d * d;
  }
  return std::sqrt(ss);
}

double total_charge(std::span<const InformationCharge> sources) {
  // Neumaier summation.
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& s : sources) {
    const double t = sum + s.magnitude;
    if (std::abs(sum) >= std::abs(s.magnitude)) {
      carry += (sum - t) + s.magnitude;
    } else {
      carry += (s.magnitude - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace fieldmarket
