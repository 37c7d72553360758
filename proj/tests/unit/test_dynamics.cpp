#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include <rbmd/dynamics.hpp>
#include <rbmd/errors.hpp>
#include <rbmd/io.hpp>
#include <rbmd/rng.hpp>

#include "oracles.hpp"

using namespace rbmd;

namespace {

double lag1_autocorrelation(const std::vector<Vec2>& p) {
  double mean = 0.0;
  for (Vec2 v : p) mean += v.x;
  mean /= static_cast<double>(p.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    den += (p[i].x - mean) * (p[i].x - mean);
    if (i + 1 < p.size()) num += (p[i].x - mean) * (p[i + 1].x - mean);
  }
  return num / den;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("generator streams") {
    // Regression lock for the first N(0, 1) pair of seed 7.
    Rng r = Rng::stream(7, kSimulationStream);
    const Vec2 z = gaussian_step(1.0, r);
    CHECK(z.x == 0.90052745200153761);
    CHECK(z.y == 0.47134730621922905);
    CHECK(Rng::derive_seed(7, 0) != Rng::derive_seed(7, 1));
    CHECK(Rng::derive_seed(7, 1) != Rng::derive_seed(8, 1));
    Rng u(3);
    for (int k = 0; k < 1000; ++k) {
      const double v = u.uniform();
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }

  TEST_CASE("gaussian step moments") {
    Rng r(123);
    const int n = 1000000;
    double sx = 0.0, sy = 0.0;
    for (int k = 0; k < n; ++k) {
      const Vec2 z = gaussian_step(1.0, r);
      sx += z.x;
      sy += z.y;
    }
    CHECK(std::fabs(sx / n) < 4e-3);
    CHECK(std::fabs(sy / n) < 4e-3);
    double vx = 0.0, vy = 0.0, mx = 0.0, my = 0.0;
    std::vector<Vec2> draws(n);
    for (auto& z : draws) {
      z = gaussian_step(0.25, r);
      mx += z.x;
      my += z.y;
    }
    mx /= n;
    my /= n;
    for (Vec2 z : draws) {
      vx += (z.x - mx) * (z.x - mx);
      vy += (z.y - my) * (z.y - my);
    }
    CHECK(vx / (n - 1) == doctest::Approx(0.25).epsilon(0.01));
    CHECK(vy / (n - 1) == doctest::Approx(0.25).epsilon(0.01));
  }

  TEST_CASE("zero steps") {
    const Trajectory t = simulate_rbmd(holed_ellipse(), DriftFunction::linear(1.0), {0, 0}, 0.003, 0, 1);
    REQUIRE(t.positions.size() == 1);
    CHECK(t.positions[0] == Vec2{0, 0});
    CHECK(t.n_steps() == 0);
  }

  TEST_CASE("every position stays in the domain") {
    const Domain s = holed_ellipse();
    const Trajectory t = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 100000, 2024);
    CHECK(t.positions.size() == 100001);
    std::size_t outside = 0;
    for (Vec2 p : t.positions) outside += !s.contains(p);
    CHECK(outside == 0);
    CHECK(t.steps.accepted + t.steps.reflected + t.steps.rejected == 100000);
    CHECK(t.steps.reflected > 0);
  }

  TEST_CASE("simulation is deterministic") {
    const Domain s = holed_ellipse();
    const Trajectory a = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 20000, 9);
    const Trajectory b = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 20000, 9);
    CHECK(a.positions == b.positions);
    CHECK(io::trajectory_csv(a) == io::trajectory_csv(b));
    const Trajectory c = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 20000, 10);
    CHECK(a.positions != c.positions);
  }

  TEST_CASE("step branches match an independent re-run on the disk") {
    const Domain d = Domain::disk({0, 0}, 1.0);
    const Trajectory t = simulate_rbmd(d, DriftFunction::zero(), {0, 0}, 0.01, 100000, 42);
    const auto ref = oracle::disk_scheme({0, 0}, 1.0, {0, 0}, 0.01, 100000, 42, [](Vec2) { return Vec2{}; });
    CHECK(t.steps.rejected == ref.rejected);
    CHECK(t.steps.reflected == ref.reflected);
    CHECK(t.steps.accepted == ref.accepted);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.positions.size(); ++i) worst = std::max(worst, distance(t.positions[i], ref.path[i]));
    CHECK(worst < 1e-9);
  }

  TEST_CASE("linear drift on a small disk matches the re-run") {
    const Domain d = Domain::disk({0.5, -0.5}, 0.1);
    const DriftFunction mu = DriftFunction::linear(2.0, {0.4, -0.4});
    const auto ref = oracle::disk_scheme({0.5, -0.5}, 0.1, {0.5, -0.5}, 0.02, 50000, 5, [&](Vec2 x) { return mu(x); });
    const Trajectory t = simulate_rbmd(d, mu, {0.5, -0.5}, 0.02, 50000, 5);
    CHECK(t.steps.rejected == ref.rejected);
    CHECK(t.steps.reflected == ref.reflected);
    CHECK(t.steps.rejected > 0);
  }

  TEST_CASE("simulation errors") {
    const Domain s = holed_ellipse();
    CHECK_THROWS_AS(simulate_rbmd(s, DriftFunction::zero(), {0.8, 0.0}, 0.003, 10, 1), StartOutsideDomain);
    CHECK_THROWS_AS(simulate_rbmd(s, DriftFunction::zero(), {0, 0}, 0.0, 10, 1), ConfigError);
    const DriftFunction bad([](Vec2) { return Vec2{std::numeric_limits<double>::quiet_NaN(), 0.0}; }, 1.0);
    CHECK_THROWS_AS(simulate_rbmd(s, bad, {0, 0}, 0.003, 10, 1), NonFiniteDrift);
  }

  TEST_CASE("default start") {
    CHECK(default_start(holed_ellipse()) == Vec2{0, 0});
    // Bounding-box centre in the hole of an annulus.
    const Domain a = Domain::difference(Domain::disk({0, 0}, 1), Domain::disk({0, 0}, 0.5));
    const Vec2 x = default_start(a);
    CHECK(a.contains(x));
  }

  TEST_CASE("subsample") {
    const Trajectory t = simulate_rbmd(holed_ellipse(), DriftFunction::linear(1.0), {0, 0}, 0.003, 10, 3);
    const Trajectory same = subsample(t, 1);
    CHECK(same.positions == t.positions);
    CHECK(same.delta == t.delta);
    const Trajectory s = subsample(t, 5);
    REQUIRE(s.positions.size() == 3);
    CHECK(s.positions[1] == t.positions[5]);
    CHECK(s.positions[2] == t.positions[10]);
    CHECK(s.delta == doctest::Approx(0.015));
    CHECK_THROWS_AS(subsample(t, 0), ConfigError);
  }

  TEST_CASE("thinning weakens lag-1 dependence") {
    const Trajectory t = simulate_rbmd(holed_ellipse(), DriftFunction::linear(1.0), {0, 0}, 0.003, 100000, 8);
    const double full = lag1_autocorrelation(t.positions);
    const double thin = lag1_autocorrelation(subsample(t, 10).positions);
    CHECK(thin < full);
  }

  TEST_CASE("drift Lipschitz bound and potential") {
    const DriftFunction mu = DriftFunction::linear(1.5, {0.2, -0.1});
    const BBox box = holed_ellipse().bbox();
    Rng g(4);
    auto draw = [&] {
      return Vec2{box.lo.x + box.width() * g.uniform(), box.lo.y + box.height() * g.uniform()};
    };
    for (int k = 0; k < 10000; ++k) {
      const Vec2 x = draw(), y = draw();
      CHECK(norm(mu(x) - mu(y)) <= 1.05 * mu.lipschitz() * norm(x - y));
    }
    REQUIRE(mu.gradient_case());
    const Potential& v = *mu.potential();
    const double step = 1e-5;
    for (int k = 0; k < 200; ++k) {
      const Vec2 x = draw();
      const Vec2 fd{(v.value(x + Vec2{step, 0}) - v.value(x - Vec2{step, 0})) / (2 * step),
                    (v.value(x + Vec2{0, step}) - v.value(x - Vec2{0, step})) / (2 * step)};
      CHECK(norm(mu(x) - (-0.5) * fd) <= 1e-6);
      CHECK(norm(v.gradient(x) - fd) <= 1e-6);
    }
    CHECK(DriftFunction::linear(1.0)({0.3, -0.4}) == Vec2{-0.3, 0.4});
  }

  TEST_CASE("drift specs") {
    const DriftFunction a = DriftFunction::from_json({{"type", "linear"}, {"k", 2.0}, {"center", {1.0, 0.0}}});
    CHECK(a({0, 0}) == Vec2{2.0, 0.0});
    CHECK(DriftFunction::from_json(a.spec()).spec() == a.spec());
    const DriftFunction z = DriftFunction::from_json({{"type", "none"}});
    CHECK(z({0.4, 0.1}) == Vec2{0, 0});
    CHECK_THROWS_AS(DriftFunction::from_json({{"type", "vortex"}}), ConfigError);
    CHECK_THROWS_AS(DriftFunction::from_json({{"type", "linear"}, {"gain", 1.0}}), ConfigError);
  }
}
