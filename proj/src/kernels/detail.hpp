#pragma once

// Per-item routines shared by the serial and OpenMP kernels. Keeping a
// single copy is what makes the partitioned kernels bit-identical.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "fieldmarket/kernels.hpp"

namespace fieldmarket::kernels::detail {

/// Accumulates sources [first, last) into `out` in index order.
inline SuperposeStats accumulate_sources(const SourceBlock& sources, std::size_t first,
                                         std::size_t last, std::span<const double> point,
                                         FieldKernelParams params, std::span<double> out) {
  SuperposeStats stats;
  const std::size_t dim = sources.dim;
  for (std::size_t j = first; j < last; ++j) {
    const auto pos = sources.position(j);
    double r2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = point[i] - pos[i];
      r2 += d * d;
    }
    const double r = std::sqrt(r2);
    const double q = sources.charges[j];
    if (r < params.floor) {
      ++stats.degenerate;
      stats.degenerate_magnitude += params.coupling * q / (params.floor * params.floor);
      continue;
    }
    const double coef = params.coupling * q / (r2 * r);
    for (std::size_t i = 0; i < dim; ++i) out[i] += coef * (point[i] - pos[i]);
  }
  return stats;
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

struct Kronrod {
  double integral = 0.0;
  double abs_integral = 0.0;
  bool finite = true;
};

template <class F>
Kronrod kronrod15(F&& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  Kronrod k;
  const double fc = f(mid);
  k.integral = kKronrodWeights[7] * fc;
  k.abs_integral = kKronrodWeights[7] * std::abs(fc);
  k.finite = std::isfinite(fc);
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    k.integral += kKronrodWeights[i] * (f1 + f2);
    k.abs_integral += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    k.finite = k.finite && std::isfinite(f1) && std::isfinite(f2);
  }
  k.integral *= half;
  k.abs_integral *= half;
  return k;
}

/// Adaptive bisection on [0, 1]: an interval is accepted once its 15-point
/// estimate and the sum of its two halves agree within rel_tol, measured
/// against max(|refined|, width * segment scale).
template <class F>
SegmentIntegral adaptive_kronrod(F&& f, QuadratureOptions options) {
  constexpr std::size_t kPerRule = 15;
  SegmentIntegral result;
  const Kronrod first = kronrod15(f, 0.0, 1.0);
  result.evaluations = kPerRule;
  if (!first.finite) {
    result.finite = false;
    return result;
  }
  const double scale = std::max(first.abs_integral, std::abs(first.integral));

  struct Pending {
    double lo, hi, estimate;
  };
  std::vector<Pending> stack{{0.0, 1.0, first.integral}};
  double sum = 0.0;
  double carry = 0.0;
  auto add = [&](double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };

  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const Kronrod left = kronrod15(f, p.lo, mid);
    const Kronrod right = kronrod15(f, mid, p.hi);
    result.evaluations += 2 * kPerRule;
    if (!left.finite || !right.finite) {
      result.finite = false;
      return result;
    }
    const double refined = left.integral + right.integral;
    const double tol = options.rel_tol * std::max(std::abs(refined), scale * (p.hi - p.lo));
    const bool budget_left = result.evaluations + 2 * kPerRule * (stack.size() + 2) <=
                             options.max_evaluations;
    if (std::abs(refined - p.estimate) <= tol || mid <= p.lo || mid >= p.hi) {
      add(refined);
    } else if (!budget_left) {
      result.converged = false;
      add(refined);
    } else {
      stack.push_back({mid, p.hi, right.integral});
      stack.push_back({p.lo, mid, left.integral});
    }
  }
  result.value = sum + carry;
  return result;
}

inline SegmentIntegral integrate_segment(const SourceBlock& sources,
                                         std::span<const double> from,
                                         std::span<const double> to, double probe,
                                         FieldKernelParams params,
                                         QuadratureOptions options) {
  const std::size_t dim = sources.dim;
  std::vector<double> delta(dim);
  double length2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    delta[i] = to[i] - from[i];
    length2 += delta[i] * delta[i];
  }
  if (length2 == 0.0) return {};

  std::vector<double> x(dim);
  std::vector<double> field(dim);
  // dL = -probe * E(x) . dl with x = from + s * delta, dl = delta ds.
  auto integrand = [&](double s) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = from[i] + s * delta[i];
    std::fill(field.begin(), field.end(), 0.0);
    accumulate_sources(sources, 0, sources.size(), x, params, field);
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dot += field[i] * delta[i];
    return -probe * dot;
  };
  return adaptive_kronrod(integrand, options);
}

}  // namespace fieldmarket::kernels::detail
