// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance <fieldmarket-binary> [criterion...]
//
// With no criterion numbers every criterion runs. Exit status is nonzero if
// any selected criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sys/wait.h>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fieldmarket/auction_sim.hpp"
#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/error.hpp"
#include "fieldmarket/field_engine.hpp"
#include "fieldmarket/io.hpp"
#include "fieldmarket/series_energy.hpp"
#include "oracles.hpp"

using namespace fieldmarket;
namespace fs = std::filesystem;

namespace {

const std::string kData = FIELDMARKET_DATA_DIR;
std::string g_tool;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> body;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Process {
  int status = -1;
  std::string out;
};

Process run_tool(const std::string& args) {
  Process p;
  const std::string cmd = "'" + g_tool + "' " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return p;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

Verdict inverse_square() {
  Verdict v;
  const FieldParams params;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> q(1e-3, 1e3);
  std::uniform_real_distribution<double> logr(std::log10(2 * params.distance_floor), 4.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double Q = q(rng), r = std::pow(10.0, logr(rng));
    const double ratio = field_magnitude(Q, 2 * r, params) / field_magnitude(Q, r, params);
    worst = std::max(worst, std::abs(ratio - 0.25) / 0.25);
  }
  v.require(worst <= 1e-12, "worst relative error " + fmt(worst));
  v.detail = v.pass ? "worst relative error " + fmt(worst) : v.detail;
  return v;
}

Verdict superposition() {
  Verdict v;
  const FieldParams params;
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> count(1, 100);
  std::uniform_int_distribution<int> dims(1, 8);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_real_distribution<double> charge(0.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = count(rng);
    const std::size_t dim = dims(rng);
    auto point = [&] {
      std::vector<double> p(dim);
      for (auto& x : p) x = pos(rng);
      return FeatureVector(p);
    };
    std::vector<InformationCharge> sources;
    for (int j = 0; j < n; ++j) sources.emplace_back("s", point(), charge(rng));
    const auto at = point();
    const auto all = field_at(sources, at, params);
    std::vector<double> sum(dim, 0.0);
    double scale = 0.0;
    for (const auto& s : sources) {
      const auto one = field_at(std::span(&s, 1), at, params);
      for (std::size_t i = 0; i < dim; ++i) sum[i] += one[i];
      scale += one.magnitude();
    }
    if (scale == 0.0) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      worst = std::max(worst, std::abs(all[i] - sum[i]) / scale);
    }
  }
  v.require(worst <= 1e-12, "worst relative error " + fmt(worst));
  if (v.pass) v.detail = "worst relative error " + fmt(worst) + " (vs sum of |E_j|)";
  return v;
}

Verdict conservative_field() {
  Verdict v;
  const FieldParams params;
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> q(0.5, 3.0);
  std::vector<InformationCharge> sources;
  for (int j = 0; j < 5; ++j) {
    sources.emplace_back("s", FeatureVector{pos(rng), pos(rng), pos(rng)}, q(rng));
  }
  const FeatureVector from{5.0, 5.0, 5.0};
  const FeatureVector to{-4.0, 0.5, -1.0};
  std::vector<double> works;
  for (int p = 0; p < 10; ++p) {
    std::vector<FeatureVector> vertices{from};
    for (int k = 0; k < 1 + p % 6; ++k) {
      std::vector<double> x{pos(rng) * 1.5, pos(rng) * 1.5, pos(rng) * 1.5};
      vertices.emplace_back(x);
    }
    vertices.push_back(to);
    try {
      const auto r = integrate_work(sources, 1.0, PolylinePath(vertices), params);
      v.require(r.converged, "quadrature did not converge on path " + std::to_string(p));
      works.push_back(r.work);
    } catch (const Error&) {
      --p;  // a random detour grazed a source; draw another
    }
  }
  double spread = 0.0;
  for (double a : works) {
    for (double b : works) {
      spread = std::max(spread, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
    }
  }
  v.require(spread <= 1e-6, "path spread " + fmt(spread));

  const std::vector<InformationCharge> one{{"q", FeatureVector{0.0, 0.0}, 1.0}};
  const PolylinePath radial({FeatureVector{1.0, 0.0}, FeatureVector{2.0, 0.0}});
  const double numeric = work_line_integral(one, 1.0, radial, params);
  const double closed = work_closed_form(1.0, 1.0, 1.0, 1.0, 2.0, params.distance_floor);
  const double radial_err = std::abs(numeric - closed) / std::abs(closed);
  v.require(radial_err <= 1e-8, "radial error " + fmt(radial_err));
  if (v.pass) v.detail = "path spread " + fmt(spread) + ", radial error " + fmt(radial_err);
  return v;
}

Verdict work_energy() {
  Verdict v;
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> price(1.0, 5000.0);
  std::uniform_real_distribution<double> mass(0.01, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PotentialModel model{mass(rng), ReferenceRule::fixed(0.0)};
    const double v1 = price(rng), v2 = price(rng);
    const double work = market_work(model.mass, v2 - v1);
    const double delta = potential_delta(v2, v1, model, 0.0);
    worst = std::max(worst, std::abs(work - delta) / std::max(std::abs(delta), 1e-300));
  }
  v.require(worst <= 1e-12, "worst relative error " + fmt(worst));
  const PotentialModel unit{1.0, ReferenceRule::fixed(950.0)};
  const double move = potential_delta(1000.0, 950.0, unit, 950.0);
  v.require(move == 50.0 && market_work(1.0, 50.0) == 50.0,
            "950 -> 1000 gave " + fmt(move));
  if (v.pass) v.detail = "worst relative error " + fmt(worst) + ", 950 -> 1000 = 50";
  return v;
}

Verdict free_fall() {
  Verdict v;
  const double v0 = 1000.0, g = 2.0;
  const int n = 30;
  std::vector<Bar> bars;
  for (int k = 0; k < n; ++k) {
    const double c = v0 - 0.5 * g * k * k;
    Bar b;
    b.timestamp = Timestamp::from_epoch_seconds(std::int64_t{k} * 86400, false);
    b.open = b.high = b.low = b.close = c;
    bars.push_back(b);
  }
  // One bar lasts sqrt(g) time units, the scale on which a unit-mass
  // potential m*(close - ref) and kinetic m*v^2/2 describe the same motion.
  const PotentialModel model{1.0, ReferenceRule::fixed(bars.back().close)};
  const auto trace = energy_decomposition(bars, model, std::sqrt(g));
  const double e0 = trace.front().total;
  double drift = 0.0;
  for (const auto& p : trace) drift = std::max(drift, std::abs(p.total - e0) / e0);
  // Backward differences lag by half a bar: total_k = E0 - g (k - 1/4) / 2.
  const double analytic = (n - 1 - 0.25) / ((n - 1.0) * (n - 1.0));
  v.require(std::abs(drift - analytic) <= 1e-9 * analytic,
            "drift " + fmt(drift) + " disagrees with analytic " + fmt(analytic));
  v.require(drift <= 0.02, "max drift " + fmt(100 * drift) + "% (analytic " +
                               fmt(100 * analytic) + "%) exceeds 2%");
  if (v.pass) v.detail = "max drift " + fmt(100 * drift) + "%";
  return v;
}

Verdict auction_oracle() {
  Verdict v;
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> prev(40.0, 160.0);
  const double ticks[] = {1.0, 0.5, 0.25, 2.0, 5.0};
  int crossed = 0;
  for (int i = 0; i < 1000; ++i) {
    const double tick = ticks[i % 5];
    const auto book = oracle::random_book(rng, 50, tick);
    const double p = prev(rng);
    const auto got = clear_auction(book, p, tick);
    const auto want = oracle::brute_auction(book, p, tick);
    crossed += got.crossed;
    if (got.clearing_price != want.price || got.executed_volume != want.volume) {
      v.require(false, "book " + std::to_string(i) + " differs from the exhaustive scan");
    }
  }
  if (v.pass) v.detail = "1000 books, " + std::to_string(crossed) + " crossed";
  return v;
}

Verdict narrative_path() {
  Verdict v;
  const auto p = run_tool("simulate --scenario '" + kData + "/paper_days.csv'");
  v.require(p.status == 0, "exit status " + std::to_string(p.status) + ": " + p.out);
  if (!v.pass) return v;
  const auto rows = split_csv(p.out);
  std::vector<std::string> prices;
  for (std::size_t i = 1; i < rows.size(); ++i) prices.push_back(rows[i].at(1));
  v.require(prices == std::vector<std::string>{"950", "1000", "1100"},
            "price path differs: " + p.out);
  if (v.pass) v.detail = "prices 950, 1000, 1100";
  return v;
}

Verdict indicator_run() {
  Verdict v;
  std::mt19937_64 rng(1008);
  std::normal_distribution<double> ret(0.0005, 0.02);
  std::uniform_real_distribution<double> wick(0.0, 0.01);
  std::vector<Bar> bars;
  double close = 1000.0;
  for (int i = 0; i < 500; ++i) {
    Bar b;
    b.timestamp = Timestamp::from_epoch_seconds(1'577'664'000 + std::int64_t{i} * 86400, false);
    b.open = close;
    close = std::round(close * std::exp(ret(rng)) * 100.0) / 100.0;
    b.close = close;
    b.high = std::round(std::max(b.open, b.close) * (1 + wick(rng)) * 100.0) / 100.0;
    b.low = std::round(std::min(b.open, b.close) * (1 - wick(rng)) * 100.0) / 100.0;
    b.volume = 100000 + i;
    bars.push_back(b);
  }
  const auto file = fs::temp_directory_path() / "fieldmarket_acceptance_500.csv";
  io::write_file(file.string(), io::emit_ohlcv_csv(bars));

  const auto start = std::chrono::steady_clock::now();
  const auto p = run_tool("energy --in '" + file.string() + "'");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(p.status == 0, "exit status " + std::to_string(p.status) + ": " + p.out);
  if (!v.pass) return v;
  v.require(seconds < 0.1, "took " + fmt(seconds) + " s");

  const auto rows = split_csv(p.out);
  v.require(rows.size() == 501, "expected 500 rows");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::size_t c = 1; c <= 4; ++c) {
      const double x = std::stod(rows[r].at(c));
      v.require(std::isfinite(x), "non-finite value at row " + std::to_string(r));
      if (c <= 3) v.require(x >= 0.0, "negative energy at row " + std::to_string(r));
    }
    const double k = std::stod(rows[r][1]), w = std::stod(rows[r][2]), t = std::stod(rows[r][3]);
    v.require(std::abs(t - (k + w)) <= 1e-11 * std::max(1.0, t),
              "total != kinetic + potential at row " + std::to_string(r));
  }
  if (v.pass) v.detail = "500 bars in " + fmt(1000 * seconds) + " ms";
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::string d = "'" + kData + "/";
  const std::vector<std::string> commands{
      "field --assets " + d + "assets.csv'",
      "field --assets " + d + "assets.csv' --points " + d + "points.csv' --normalize zscore",
      "work --assets " + d + "assets.csv' --path " + d + "path.csv'",
      "energy --in " + d + "bars_weekly.csv'",
      "energy --in " + d + "bars_constant.csv' --reference-rule fixed:90",
      "auction --book " + d + "crossing.csv' --prev 9",
      "simulate --scenario " + d + "paper_days.csv'",
      "--config " + d + "full.cfg' config dump",
      "--format json simulate --scenario " + d + "paper_days.csv'",
  };
  for (const auto& c : commands) {
    const auto a = run_tool(c);
    const auto b = run_tool(c);
    v.require(a.status == 0, "'" + c + "' failed: " + a.out);
    v.require(a.out == b.out && a.status == b.status, "'" + c + "' differs between runs");
  }
  if (v.pass) v.detail = std::to_string(commands.size()) + " commands, byte-identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <fieldmarket-binary> [criterion...]\n", argv[0]);
    return 2;
  }
  g_tool = argv[1];
  std::set<int> selected;
  for (int i = 2; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "inverse-square law", 1.0, inverse_square},
      {2, "superposition", 1.0, superposition},
      {3, "conservative field", 5.0, conservative_field},
      {4, "work-energy consistency", 1.0, work_energy},
      {5, "free-fall energy conservation", 1.0, free_fall},
      {6, "auction oracle", 5.0, auction_oracle},
      {7, "narrative price path", 1.0, narrative_path},
      {8, "indicator run", 1.0, indicator_run},
      {9, "determinism", 30.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && seconds > c.budget_seconds) {
      v.pass = false;
      v.detail = "over time budget of " + fmt(c.budget_seconds) + " s";
    }
    std::printf("[%s] criterion %d: %s: %s (%.3f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), seconds);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
