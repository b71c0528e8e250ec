#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp` with the same
// signature. The OpenMP versions are deterministic: their results do not
// depend on the thread count, and the ones that only partition independent
// work (per point, per segment, per grid price) are bit-identical to the
// serial reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fieldmarket::kernels {

/// Row-major `size() x dim` source coordinates with one charge per row.
struct SourceBlock {
  std::span<const double> coords;
  std::span<const double> charges;
  std::size_t dim = 0;

  std::size_t size() const noexcept { return charges.size(); }
  std::span<const double> position(std::size_t j) const noexcept {
    return coords.subspan(j * dim, dim);
  }
};

struct FieldKernelParams {
  double coupling = 1.0;
  double floor = 1e-6;
};

/// Sources closer than the floor add no direction; they are counted here.
struct SuperposeStats {
  std::size_t degenerate = 0;
  double degenerate_magnitude = 0.0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  std::size_t max_evaluations = std::size_t{1} << 20;
};

struct SegmentIntegral {
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  bool finite = true;
};

// The OpenMP superpose splits sources into fixed blocks of this size and
// reduces the block partials in block order.
inline constexpr std::size_t kSuperposeBlock = 128;

namespace serial {

SuperposeStats superpose(const SourceBlock& sources, std::span<const double> point,
                         FieldKernelParams params, std::span<double> out);

void superpose_points(const SourceBlock& sources, std::span<const double> points,
                      FieldKernelParams params, std::span<double> out,
                      std::span<std::size_t> degenerate);

/// Work of the force -probe*E along each consecutive pair of vertices.
std::vector<SegmentIntegral> integrate_segments(const SourceBlock& sources,
                                                std::span<const double> vertices,
                                                double probe, FieldKernelParams params,
                                                QuadratureOptions options);

/// out[g] = market_qty + sum of quantities whose limit >= grid[g].
void cumulative_buy(std::span<const double> limits,
                    std::span<const std::int64_t> quantities, std::int64_t market_qty,
                    std::span<const double> grid, std::span<std::int64_t> out);

/// out[g] = market_qty + sum of quantities whose limit <= grid[g].
void cumulative_sell(std::span<const double> limits,
                     std::span<const std::int64_t> quantities, std::int64_t market_qty,
                     std::span<const double> grid, std::span<std::int64_t> out);

/// Trailing minimum over the last `window` values including the current one.
void rolling_min(std::span<const double> values, std::size_t window,
                 std::span<double> out);

}  // namespace serial

namespace omp {

SuperposeStats superpose(const SourceBlock& sources, std::span<const double> point,
                         FieldKernelParams params, std::span<double> out);

void superpose_points(const SourceBlock& sources, std::span<const double> points,
                      FieldKernelParams params, std::span<double> out,
                      std::span<std::size_t> degenerate);

std::vector<SegmentIntegral> integrate_segments(const SourceBlock& sources,
                                                std::span<const double> vertices,
                                                double probe, FieldKernelParams params,
                                                QuadratureOptions options);

void cumulative_buy(std::span<const double> limits,
                    std::span<const std::int64_t> quantities, std::int64_t market_qty,
                    std::span<const double> grid, std::span<std::int64_t> out);

void cumulative_sell(std::span<const double> limits,
                     std::span<const std::int64_t> quantities, std::int64_t market_qty,
                     std::span<const double> grid, std::span<std::int64_t> out);

void rolling_min(std::span<const double> values, std::size_t window,
                 std::span<double> out);

}  // namespace omp

}  // namespace fieldmarket::kernels
