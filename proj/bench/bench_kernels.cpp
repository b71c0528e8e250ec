// Serial reference vs OpenMP kernels. Each pair runs on identical inputs.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "fieldmarket/kernels.hpp"

namespace k = fieldmarket::kernels;

namespace {

struct Field {
  std::vector<double> coords;
  std::vector<double> charges;
  std::size_t dim = 8;

  k::SourceBlock block() const { return {coords, charges, dim}; }
};

Field make_field(std::size_t n, std::size_t dim = 8) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Field f;
  f.dim = dim;
  f.coords.resize(n * dim);
  f.charges.resize(n);
  for (auto& x : f.coords) x = u(rng);
  for (auto& q : f.charges) q = 0.1 + std::abs(u(rng));
  return f;
}

std::vector<double> make_points(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(7 * n + 1);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<double> p(n * dim);
  for (auto& x : p) x = u(rng);
  return p;
}

template <auto Superpose>
void superpose(benchmark::State& state) {
  const auto f = make_field(state.range(0));
  const auto p = make_points(1, f.dim);
  std::vector<double> out(f.dim);
  for (auto _ : state) {
    Superpose(f.block(), p, k::FieldKernelParams{}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto SuperposePoints>
void superpose_points(benchmark::State& state) {
  const auto f = make_field(2000);
  const std::size_t n = state.range(0);
  const auto p = make_points(n, f.dim);
  std::vector<double> out(n * f.dim);
  std::vector<std::size_t> degenerate(n);
  for (auto _ : state) {
    SuperposePoints(f.block(), p, k::FieldKernelParams{}, out, degenerate);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n * f.charges.size());
}

template <auto Integrate>
void integrate_segments(benchmark::State& state) {
  const auto f = make_field(50, 3);
  auto vertices = make_points(state.range(0) + 1, 3);
  for (auto& x : vertices) x *= 2.0;
  for (auto _ : state) {
    auto seg = Integrate(f.block(), vertices, 1.0, k::FieldKernelParams{}, k::QuadratureOptions{});
    benchmark::DoNotOptimize(seg.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Cumulative>
void cumulative(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<int> key(0, 100000);
  std::vector<double> limits(n);
  std::vector<std::int64_t> qty(n, 3);
  for (auto& l : limits) l = key(rng);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * 100000.0 / n;
  std::vector<std::int64_t> out(n);
  for (auto _ : state) {
    Cumulative(limits, qty, 0, grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <auto RollingMin>
void rolling_min(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::mt19937_64 rng(n);
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> x(n);
  double level = 1000.0;
  for (auto& v : x) v = (level += step(rng));
  std::vector<double> out(n);
  for (auto _ : state) {
    RollingMin(x, 250, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(superpose<k::serial::superpose>)->Name("superpose/serial")->Range(128, 1 << 16);
BENCHMARK(superpose<k::omp::superpose>)->Name("superpose/omp")->Range(128, 1 << 16);
BENCHMARK(superpose_points<k::serial::superpose_points>)->Name("superpose_points/serial")->Range(8, 512);
BENCHMARK(superpose_points<k::omp::superpose_points>)->Name("superpose_points/omp")->Range(8, 512);
BENCHMARK(integrate_segments<k::serial::integrate_segments>)->Name("integrate_segments/serial")->Range(4, 64);
BENCHMARK(integrate_segments<k::omp::integrate_segments>)->Name("integrate_segments/omp")->Range(4, 64);
BENCHMARK(cumulative<k::serial::cumulative_buy>)->Name("cumulative_buy/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(cumulative<k::omp::cumulative_buy>)->Name("cumulative_buy/omp")->Range(1 << 10, 1 << 18);
BENCHMARK(rolling_min<k::serial::rolling_min>)->Name("rolling_min/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(rolling_min<k::omp::rolling_min>)->Name("rolling_min/omp")->Range(1 << 10, 1 << 20);

BENCHMARK_MAIN();
