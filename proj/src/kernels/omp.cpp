#include <omp.h>

#include <algorithm>
#include <numeric>

#include "detail.hpp"

namespace fieldmarket::kernels::omp {

namespace {

// Below these sizes the fork/join costs more than it saves.
constexpr std::size_t kMinParallelPoints = 8;
constexpr std::size_t kMinParallelGrid = 4096;
constexpr std::size_t kMinParallelSeries = 8192;

}  // namespace

SuperposeStats superpose(const SourceBlock& sources, std::span<const double> point,
                         FieldKernelParams params, std::span<double> out) {
  const std::size_t dim = sources.dim;
  const std::size_t n_blocks = (sources.size() + kSuperposeBlock - 1) / kSuperposeBlock;
  std::vector<double> partial(n_blocks * dim, 0.0);
  std::vector<SuperposeStats> stats(n_blocks);

#pragma omp parallel for schedule(static) if (n_blocks > 1)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
    const std::size_t first = static_cast<std::size_t>(b) * kSuperposeBlock;
    const std::size_t last = std::min(first + kSuperposeBlock, sources.size());
    stats[b] = detail::accumulate_sources(
        sources, first, last, point, params,
        std::span<double>(partial).subspan(static_cast<std::size_t>(b) * dim, dim));
  }

  // Ordered, compensated reduction of the block partials.
  SuperposeStats total;
  for (std::size_t i = 0; i < dim; ++i) {
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const double x = partial[b * dim + i];
      const double t = sum + x;
      carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    }
    out[i] = sum + carry;
  }
  for (const auto& s : stats) {
    total.degenerate += s.degenerate;
    total.degenerate_magnitude += s.degenerate_magnitude;
  }
  return total;
}

void superpose_points(const SourceBlock& sources, std::span<const double> points,
                      FieldKernelParams params, std::span<double> out,
                      std::span<std::size_t> degenerate) {
  const std::size_t dim = sources.dim;
  const auto n = static_cast<std::ptrdiff_t>(points.size() / dim);
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kMinParallelPoints))
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const auto row_start = static_cast<std::size_t>(p) * dim;
    auto row = out.subspan(row_start, dim);
    std::fill(row.begin(), row.end(), 0.0);
    degenerate[p] = detail::accumulate_sources(sources, 0, sources.size(),
                                               points.subspan(row_start, dim), params, row)
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
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto at = static_cast<std::size_t>(s) * dim;
    out[s] = detail::integrate_segment(sources, vertices.subspan(at, dim),
                                       vertices.subspan(at + dim, dim), probe, params,
                                       options);
  }
  return out;
}

namespace {

struct SortedBook {
  std::vector<double> limits;
  std::vector<std::int64_t> prefix;  // prefix[i] = sum of the first i quantities
};

SortedBook sort_book(std::span<const double> limits,
                     std::span<const std::int64_t> quantities) {
  std::vector<std::size_t> idx(limits.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return limits[a] < limits[b]; });
  SortedBook book;
  book.limits.reserve(idx.size());
  book.prefix.assign(idx.size() + 1, 0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    book.limits.push_back(limits[idx[k]]);
    book.prefix[k + 1] = book.prefix[k] + quantities[idx[k]];
  }
  return book;
}

}  // namespace

void cumulative_buy(std::span<const double> limits,
                    std::span<const std::int64_t> quantities, std::int64_t market_qty,
                    std::span<const double> grid, std::span<std::int64_t> out) {
  const SortedBook book = sort_book(limits, quantities);
  const std::int64_t total = book.prefix.back();
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static) if (grid.size() >= kMinParallelGrid)
  for (std::ptrdiff_t g = 0; g < n; ++g) {
    const auto below = std::lower_bound(book.limits.begin(), book.limits.end(), grid[g]) -
                       book.limits.begin();
    out[g] = market_qty + (total - book.prefix[below]);
  }
}

void cumulative_sell(std::span<const double> limits,
                     std::span<const std::int64_t> quantities, std::int64_t market_qty,
                     std::span<const double> grid, std::span<std::int64_t> out) {
  const SortedBook book = sort_book(limits, quantities);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static) if (grid.size() >= kMinParallelGrid)
  for (std::ptrdiff_t g = 0; g < n; ++g) {
    const auto at_or_below =
        std::upper_bound(book.limits.begin(), book.limits.end(), grid[g]) -
        book.limits.begin();
    out[g] = market_qty + book.prefix[at_or_below];
  }
}

// van Herk / Gil-Werman: per-block prefix and suffix minima, then each
// window is the min of one suffix and one prefix.
void rolling_min(std::span<const double> values, std::size_t window,
                 std::span<double> out) {
  const std::size_t n = values.size();
  if (n == 0) return;
  const std::size_t w = std::min(window, n);
  const std::size_t n_blocks = (n + w - 1) / w;
  std::vector<double> prefix(n);
  std::vector<double> suffix(n);
  const bool parallel = n >= kMinParallelSeries;

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * w;
    const std::size_t hi = std::min(lo + w, n);
    prefix[lo] = values[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) prefix[i] = std::min(prefix[i - 1], values[i]);
    suffix[hi - 1] = values[hi - 1];
    for (std::size_t i = hi - 1; i-- > lo;) suffix[i] = std::min(suffix[i + 1], values[i]);
  }

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n); ++t) {
    const auto i = static_cast<std::size_t>(t);
    out[i] = i + 1 < w ? prefix[i] : std::min(suffix[i + 1 - w], prefix[i]);
  }
}

}  // namespace fieldmarket::kernels::omp
