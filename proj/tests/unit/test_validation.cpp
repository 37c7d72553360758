#include <doctest.h>

#include <cmath>
#include <numbers>

#include <rbmd/density.hpp>
#include <rbmd/dynamics.hpp>
#include <rbmd/errors.hpp>
#include <rbmd/geometry.hpp>
#include <rbmd/rng.hpp>
#include <rbmd/validation.hpp>

#include "oracles.hpp"

using namespace rbmd;

namespace {

constexpr double kC = 1.982094889691362;
constexpr double kOracleC = 1.982098626312563;

Potential quadratic() { return *DriftFunction::linear(1.0).potential(); }

Region2D disk_polygon(Vec2 c, double r, int n) {
  Region2D::Loop l;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * std::numbers::pi * k / n;
    l.push_back(c + Vec2{r * std::cos(t), r * std::sin(t)});
  }
  return Region2D({l});
}

}  // namespace

TEST_SUITE("validation") {
  TEST_CASE("normalization on the unit disk") {
    const Domain d = Domain::disk({0, 0}, 1.0);
    const Potential flat{[](Vec2) { return 0.0; }, [](Vec2) { return Vec2{}; }};
    CHECK(normalization_constant(d, flat, 1000) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(normalization_constant(d, quadratic(), 1000) ==
          doctest::Approx(std::numbers::pi * (1 - std::exp(-1.0))).epsilon(1e-3));
  }

  TEST_CASE("normalization on the holed ellipse") {
    CHECK(oracle::holed_ellipse_c() == doctest::Approx(kOracleC).epsilon(1e-13));
    const double c2000 = normalization_constant(holed_ellipse(), quadratic(), 2000);
    CHECK(c2000 == doctest::Approx(kC).epsilon(1e-12));
    CHECK(c2000 == doctest::Approx(kOracleC).epsilon(1e-5));
    // Boundary cells make the error irregular in n, so no clean Richardson
    // order; the halving difference bounds the error instead.
    const double c1000 = normalization_constant(holed_ellipse(), quadratic(), 1000);
    CHECK(std::fabs(c2000 - c1000) <= 1e-5 * kOracleC);
    CHECK(std::fabs(c2000 - kOracleC) <= 2 * std::fabs(c2000 - c1000));
  }

  TEST_CASE("quadrature that does not settle") {
    const auto wave = [](Vec2 x) { return std::cos(8 * std::numbers::pi * x.x); };
    CHECK_THROWS_AS(checked_quadrature(BBox::of({0, 0}, {1, 1}), 4, wave, [](Vec2) { return true; }),
                    QuadratureNotConverged);
    const auto one = [](Vec2) { return 1.0; };
    CHECK(checked_quadrature(BBox::of({0, 0}, {2, 1}), 16, one, [](Vec2) { return true; }) == doctest::Approx(2.0));
  }

  TEST_CASE("analytic density") {
    const AnalyticDensity g(holed_ellipse(), quadratic(), kC);
    CHECK(g({0.8, 0.0}) == 0.0);
    CHECK(g({2.0, 0.0}) == 0.0);
    CHECK(g({0.0, 0.0}) == doctest::Approx(1.0 / kC));
    const double total = masked_quadrature(holed_ellipse().bbox(), 1000, [&](Vec2 x) { return g(x); },
                                           [](Vec2) { return true; });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
    Rng r(8);
    int seen = 0;
    while (seen < 100) {
      const Vec2 x{-1.5 + 3 * r.uniform(), -1 + 2 * r.uniform()};
      if (holed_ellipse().boundary_distance(x) < 1e-3 || !holed_ellipse().contains(x)) continue;
      ++seen;
      const double s = 1e-6;
      const Vec2 fd{(g(x + Vec2{s, 0}) - g(x - Vec2{s, 0})) / (2 * s), (g(x + Vec2{0, s}) - g(x - Vec2{0, s})) / (2 * s)};
      CHECK(norm(g.gradient(x) - fd) <= 1e-4 * norm(g.gradient(x)) + 1e-9);
    }
  }

  TEST_CASE("level measures") {
    const AnalyticDensity g(holed_ellipse(), quadratic(), kC);
    CHECK(region_measure(g, 0.0, 1000) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(region_measure(g, 0.6, 200) == 0.0);
    const struct {
      double lambda, content;
    } levels[] = {{0.44, 0.195570284724}, {0.41, 0.273205065461}, {0.34, 0.447155518681}, {0.27, 0.620700716221}};
    for (const auto& l : levels) {
      CHECK(oracle::holed_ellipse_level_content(l.lambda, kOracleC) == doctest::Approx(l.content).epsilon(1e-10));
      CHECK(std::fabs(region_measure(g, l.lambda, 2000) - l.content) <= 1e-4);
    }
    const Region2D s = polygonize(holed_ellipse(), 0.005);
    CHECK(region_measure(g, s, 1000) == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("sup-norm error") {
    const AnalyticDensity g(holed_ellipse(), quadratic(), kC);
    const Grid2D grid(holed_ellipse().bbox(), 60, 40);
    CHECK(sup_norm_error([&](Vec2 x) { return g(x); }, g, grid, 0.1) == 0.0);
    CHECK(sup_norm_error([&](Vec2 x) { return g(x) + 0.01; }, g, grid, 0.1) == doctest::Approx(0.01));
    CHECK_THROWS_AS(sup_norm_error([](Vec2) { return 0.0; }, g, grid, 1.0), NoInteriorNodes);
  }

  TEST_CASE("sup-norm error on the stationary run") {
    const Domain s = holed_ellipse();
    const AnalyticDensity g(s, quadratic(), kC);
    const Trajectory t = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 100000, 1);
    const DensityEstimate d(t.positions, Kernel::gaussian(), 0.2);
    const double e = sup_norm_error(d, g, Grid2D(s.bbox(), 200, 200), 0.4);
    CHECK(e < 0.25 / kC);
  }

  TEST_CASE("occupation fractions") {
    Trajectory t;
    t.delta = 1.0;
    t.positions = {{0, 0}, {0.5, 0}, {2, 2}, {0.1, 0.1}};
    CHECK(occupation_fraction(t, Domain::disk({0, 0}, 1)) == 0.75);
    CHECK(occupation_fraction(t, [](Vec2) { return true; }) == 1.0);
    CHECK(occupation_fraction(t, Domain::disk({9, 9}, 1)) == 0.0);
    const Domain s = holed_ellipse();
    const Trajectory run = simulate_rbmd(s, DriftFunction::linear(1.0), {0, 0}, 0.003, 500000, 3);
    CHECK(occupation_fraction(run, s) == 1.0);
    const Region2D ball = disk_polygon({-0.5, 0}, 0.3, 2000);
    const AnalyticDensity g(s, quadratic(), kC);
    const double truth = oracle::gaussian_slab_integral(
                             [](double x) { return oracle::chord(0.09, (x + 0.5) * (x + 0.5)); },
                             [](double) { return 0.0; }, -0.8, -0.2) /
                         kOracleC;
    CHECK(region_measure(g, ball, 1000) == doctest::Approx(truth).epsilon(1e-3));
    CHECK(std::fabs(occupation_fraction(run, ball) - truth) <= 0.03);
  }

  TEST_CASE("level nodes and gradient range") {
    const AnalyticDensity g(holed_ellipse(), quadratic(), kC);
    const auto nodes = level_nodes(g, 0.27, 0.02);
    REQUIRE_FALSE(nodes.empty());
    for (Vec2 x : nodes) CHECK(g(x) > 0.27);
    const GradientRange band = gradient_range(g, 0.26, 0.28, 0.005);
    REQUIRE(band.nodes > 0);
    // |grad g| = 2 |x| g; on the level circle that is about 2 * 0.79 * 0.27.
    CHECK(band.min > 0.3);
    CHECK(band.max < 0.5);
    CHECK(band.min <= band.max);
  }
}
