#include <algorithm>
#include <deque>
#include <numeric>

#include "detail.hpp"

namespace fieldmarket::kernels::serial {

SuperposeStats superpose(const SourceBlock& sources, std::span<const double> point,
                         FieldKernelParams params, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  return detail::accumulate_sources(sources, 0, sources.size(), point, params, out);
}

void superpose_points(const SourceBlock& sources, std::span<const double> points,
                      FieldKernelParams params, std::span<double> out,
                      std::span<std::size_t> degenerate) {
  const std::size_t dim = sources.dim;
  const std::size_t n = points.size() / dim;
  for (std::size_t p = 0; p < n; ++p) {
    auto row = out.subspan(p * dim, dim);
    std::fill(row.begin(), row.end(), 0.0);
    degenerate[p] = detail::accumulate_sources(sources, 0, sources.size(),
                                               points.subspan(p * dim, dim), params, row)
                        .degenerate;
  }
}

std::vector<SegmentIntegral> integrate_segments(const SourceBlock& sources,
                                                std::span<const double> vertices,
                                                double probe, FieldKernelParams params,
                                                QuadratureOptions options) {
  const std::size_t dim = sources.dim;
  const std::size_t n_vertices = vertices.size() / dim;
  std::vector<SegmentIntegral> out(n_vertices > 0 ? n_vertices - 1 : 0);
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = detail::integrate_segment(sources, vertices.subspan(s * dim, dim),
                                       vertices.subspan((s + 1) * dim, dim), probe, params,
                                       options);
  }
  return out;
}

namespace {

std::vector<std::size_t> order_by_limit(std::span<const double> limits) {
  std::vector<std::size_t> idx(limits.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return limits[a] < limits[b]; });
  return idx;
}

}  // namespace

// Both curves are a single merge sweep of the sorted limits against the
// ascending grid.
void cumulative_buy(std::span<const double> limits,
                    std::span<const std::int64_t> quantities, std::int64_t market_qty,
                    std::span<const double> grid, std::span<std::int64_t> out) {
  const auto idx = order_by_limit(limits);
  std::int64_t remaining = std::accumulate(quantities.begin(), quantities.end(),
                                           std::int64_t{0});
  std::size_t k = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    while (k < idx.size() && limits[idx[k]] < grid[g]) remaining -= quantities[idx[k++]];
    out[g] = market_qty + remaining;
  }
}

void cumulative_sell(std::span<const double> limits,
                     std::span<const std::int64_t> quantities, std::int64_t market_qty,
                     std::span<const double> grid, std::span<std::int64_t> out) {
  const auto idx = order_by_limit(limits);
  std::int64_t taken = 0;
  std::size_t k = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    while (k < idx.size() && limits[idx[k]] <= grid[g]) taken += quantities[idx[k++]];
    out[g] = market_qty + taken;
  }
}

void rolling_min(std::span<const double> values, std::size_t window,
                 std::span<double> out) {
  std::deque<std::size_t> mono;
  for (std::size_t t = 0; t < values.size(); ++t) {
    while (!mono.empty() && values[mono.back()] >= values[t]) mono.pop_back();
    mono.push_back(t);
    if (mono.front() + window <= t) mono.pop_front();
    out[t] = values[mono.front()];
  }
}

}  // namespace fieldmarket::kernels::serial
