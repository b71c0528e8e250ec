#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/error.hpp"
#include "oracles.hpp"

using namespace fieldmarket;

namespace {

std::vector<InformationCharge> unit_source() {
  return {{"q", FeatureVector{0.0, 0.0}, 1.0}};
}

PolylinePath random_detour(std::mt19937_64& rng, const FeatureVector& from,
                           const FeatureVector& to, int interior) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<FeatureVector> v{from};
  for (int i = 0; i < interior; ++i) {
    std::vector<double> p(from.dimension());
    for (auto& x : p) x = u(rng);
    v.emplace_back(p);
  }
  v.push_back(to);
  return PolylinePath(std::move(v));
}

}  // namespace

TEST_CASE("work_closed_form") {
  CHECK(work_closed_form(1, 1, 1, 1.3, 1.3) == 0.0);
  CHECK(work_closed_form(1, 1, 1, 1, 2) == -0.5);
  CHECK_THROWS_AS(work_closed_form(1, 1, 1, 1e-9, 1), Error);
  CHECK_THROWS_AS(work_closed_form(0, 1, 1, 1, 2), Error);

  SECTION("matches a radial quadrature of -k q0 q / r^2") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 100; ++i) {
      const double k = u(rng), q0 = u(rng), q = u(rng), r1 = u(rng), r2 = u(rng);
      const double numeric =
          oracle::romberg([&](double r) { return -q0 * k * q / (r * r); }, r1, r2);
      CHECK(oracle::rel_close(work_closed_form(k, q0, q, r1, r2), numeric, 1e-8));
    }
  }

  SECTION("additive along a ray and signed per the holding force") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
      const double k = u(rng), q0 = u(rng), q = u(rng);
      double r[3] = {u(rng), u(rng), u(rng)};
      const double split = work_closed_form(k, q0, q, r[0], r[1]) +
                           work_closed_form(k, q0, q, r[1], r[2]);
      CHECK(std::abs(split - work_closed_form(k, q0, q, r[0], r[2])) <= 1e-12 * k * q0 * q *
                                                                           (1 / r[0] + 1 / r[1] + 1 / r[2]));
      const double lo = std::min(r[0], r[1]), hi = std::max(r[0], r[1]);
      if (lo < hi) CHECK(work_closed_form(k, q0, q, lo, hi) < 0.0);
      CHECK(field_force_work(work_closed_form(k, q0, q, lo, hi)) ==
            -work_closed_form(k, q0, q, lo, hi));
    }
  }
}

TEST_CASE("work_line_integral") {
  const FieldParams params;
  SECTION("zero-length path") {
    const PolylinePath single({FeatureVector{1.0, 1.0}});
    CHECK(work_line_integral(unit_source(), 1.0, single, params) == 0.0);
    const PolylinePath repeated({FeatureVector{1.0, 1.0}, FeatureVector{1.0, 1.0}});
    CHECK(work_line_integral(unit_source(), 1.0, repeated, params) == 0.0);
  }

  SECTION("radial path matches the closed form and a Romberg oracle") {
    const PolylinePath radial({FeatureVector{1.0, 0.0}, FeatureVector{2.0, 0.0}});
    const double w = work_line_integral(unit_source(), 1.0, radial, params);
    CHECK(std::abs(w - (-0.5)) <= 1e-8);
    const double romberg = oracle::romberg([](double x) { return -1.0 / (x * x); }, 1.0, 2.0);
    CHECK(std::abs(w - romberg) <= 1e-8);
  }

  SECTION("tangential chords around a source do no net work") {
    const double r = 1.5;
    std::vector<FeatureVector> arc;
    for (int i = 0; i <= 64; ++i) {
      const double t = 2 * std::numbers::pi * i / 64;
      arc.push_back(FeatureVector{r * std::cos(t), r * std::sin(t)});
    }
    const std::vector<InformationCharge> src{{"q", FeatureVector{0.0, 0.0}, 2.0}};
    const double w = work_line_integral(src, 1.0, PolylinePath(arc), params);
    CHECK(std::abs(w) <= 1e-6 * (1.0 * 2.0 / r));
  }

  SECTION("path independence in a multi-source field") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> q(0.5, 3.0);
    std::vector<InformationCharge> sources;
    for (int j = 0; j < 5; ++j) {
      sources.emplace_back("s", FeatureVector{pos(rng), pos(rng), pos(rng)}, q(rng));
    }
    const FeatureVector from{5.0, 5.0, 5.0};
    const FeatureVector to{-0.5, 0.2, 0.1};
    const double closed = work_closed_form(sources, 1.0, from, to, params);
    for (int trial = 0; trial < 10; ++trial) {
      const auto path = random_detour(rng, from, to, 1 + trial % 5);
      const auto result = integrate_work(sources, 1.0, path, params);
      CHECK(result.converged);
      CHECK(oracle::rel_close(result.work, closed, 1e-6));
    }
  }

  SECTION("degenerate path through a charge is rejected") {
    const PolylinePath through({FeatureVector{-1.0, 0.0}, FeatureVector{1.0, 0.0}});
    try {
      work_line_integral(unit_source(), 1.0, through, params);
      FAIL("expected degenerate_path");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_path);
    }
  }

  SECTION("dimension mismatch") {
    const PolylinePath p3({FeatureVector{1, 0, 0}, FeatureVector{2, 0, 0}});
    CHECK_THROWS_AS(work_line_integral(unit_source(), 1.0, p3, params), Error);
  }
}

TEST_CASE("market work and potential energy") {
  const PotentialModel unit{1.0, ReferenceRule::fixed(950.0)};
  CHECK(market_work(2.0, 50.0) == 100.0);
  CHECK(market_work(3.0, 0.0) == 0.0);
  CHECK(market_work(2.0, -5.0) == -10.0);

  CHECK(potential_at_rate(950.0, unit, 950.0) == 0.0);
  CHECK(potential_at_rate(1000.0, unit, 950.0) == 50.0);
  CHECK(potential_delta(1000.0, 950.0, unit, 950.0) == 50.0);
  CHECK(potential_delta(1000.0, 1000.0, unit, 950.0) == 0.0);
  CHECK(market_work(unit.mass, 1000.0 - 950.0) == potential_delta(1000.0, 950.0, unit, 950.0));

  SECTION("below the reference clamps to zero with a flag") {
    const auto s = potential_sample(900.0, unit, 950.0);
    CHECK(s.energy == 0.0);
    CHECK(s.clamped);
    CHECK_FALSE(potential_sample(950.0, unit, 950.0).clamped);
  }

  SECTION("additivity, antisymmetry and work-energy consistency") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> v(500.0, 1500.0);
    std::uniform_real_distribution<double> m(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
      const PotentialModel model{m(rng), ReferenceRule::fixed(0.0)};
      const double ref = 400.0;
      const double v1 = v(rng), v2 = v(rng);
      const double d = potential_delta(v2, v1, model, ref);
      CHECK(std::abs(d - (potential_at_rate(v2, model, ref) - potential_at_rate(v1, model, ref))) <=
            1e-12 * model.mass * 1500.0);
      CHECK(std::abs(d - model.mass * (v2 - v1)) <= 1e-12 * std::abs(d));
      CHECK(potential_delta(v1, v2, model, ref) == -d);
      CHECK(market_work(model.mass, v2 - v1) == d);
    }
  }

  SECTION("invalid models") {
    CHECK_THROWS_AS(potential_at_rate(1.0, PotentialModel{0.0, {}}, 0.0), Error);
    CHECK_THROWS_AS(potential_at_rate(NAN, unit, 0.0), Error);
    CHECK_THROWS_AS(market_work(INFINITY, 1.0), Error);
  }
}

TEST_CASE("reference rules parse and print") {
  CHECK(ReferenceRule::parse("fixed:950") == ReferenceRule::fixed(950.0));
  CHECK(ReferenceRule::parse("rolling_min:20") == ReferenceRule::rolling_min(20));
  CHECK(ReferenceRule::parse("fixed:950.5").to_string() == "fixed:950.5");
  CHECK(ReferenceRule::parse("rolling_min:7").to_string() == "rolling_min:7");
  for (const char* bad : {"", "fixed", "fixed:", "fixed:abc", "rolling_min:0",
                          "rolling_min:-3", "rolling_min:2.5", "median:4"}) {
    CHECK_THROWS_AS(ReferenceRule::parse(bad), Error);
  }
}
