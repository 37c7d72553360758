#include "rbmd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbmd/errors.hpp"

namespace rbmd {
namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

AnalyticDensity::AnalyticDensity(Domain domain, Potential potential, double c)
    : domain_(std::move(domain)), potential_(std::move(potential)), c_(c) {
  if (!(c_ > 0.0) || !std::isfinite(c_)) throw QuadratureNotConverged("normalization constant must be positive");
}

AnalyticDensity AnalyticDensity::normalized(Domain domain, Potential potential, std::size_t resolution) {
  const double c = normalization_constant(domain, potential, resolution);
  return AnalyticDensity(std::move(domain), std::move(potential), c);
}

double AnalyticDensity::operator()(Vec2 x) const {
  if (!domain_.contains(x)) return 0.0;
  return std::exp(-potential_.value(x)) / c_;
}

Vec2 AnalyticDensity::gradient(Vec2 x) const {
  if (!domain_.contains(x)) return {0.0, 0.0};
  return -(*this)(x) * potential_.gradient(x);
}

double masked_quadrature(const BBox& box, std::size_t n, const std::function<double(Vec2)>& f,
                         const std::function<bool(Vec2)>& member) {
  if (n == 0) throw QuadratureNotConverged("quadrature needs at least one cell");
  const double hx = box.width() / static_cast<double>(n);
  const double hy = box.height() / static_cast<double>(n);
  const double area = hx * hy;
  auto nx_at = [&](std::size_t i) { return i == n ? box.hi.x : box.lo.x + static_cast<double>(i) * hx; };
  auto ny_at = [&](std::size_t j) { return j == n ? box.hi.y : box.lo.y + static_cast<double>(j) * hy; };

  std::vector<double> rows(n, 0.0);
  const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t jj = 0; jj < nn; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    std::vector<char> lo(n + 1), hi(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      lo[i] = member({nx_at(i), ny_at(j)});
      hi[i] = member({nx_at(i), ny_at(j + 1)});
    }
    Neumaier acc;
    const double y0 = ny_at(j);
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = nx_at(i);
      const Vec2 c{x0 + 0.5 * hx, y0 + 0.5 * hy};
      const bool mc = member(c);
      if (lo[i] == mc && lo[i + 1] == mc && hi[i] == mc && hi[i + 1] == mc) {
        if (mc) acc.add(f(c) * area);
        continue;
      }
      for (int b = 0; b < 4; ++b) {
        for (int a = 0; a < 4; ++a) {
          const Vec2 p{x0 + (a + 0.5) * 0.25 * hx, y0 + (b + 0.5) * 0.25 * hy};
          if (member(p)) acc.add(f(p) * area / 16.0);
        }
      }
    }
    rows[j] = acc.value();
  }
  Neumaier total;
  for (double r : rows) total.add(r);
  return total.value();
}

double checked_quadrature(const BBox& box, std::size_t n, const std::function<double(Vec2)>& f,
                          const std::function<bool(Vec2)>& member) {
  const double a = masked_quadrature(box, n, f, member);
  const double b = masked_quadrature(box, 2 * n, f, member);
  if (!std::isfinite(a) || !std::isfinite(b)) throw QuadratureNotConverged("non-finite quadrature value");
  const double scale = std::max(std::fabs(b), std::numeric_limits<double>::min());
  if (std::fabs(a - b) >= 1e-3 * scale && !(a == 0.0 && b == 0.0)) {
    throw QuadratureNotConverged("doubling the resolution changed the value by " +
                                 std::to_string(std::fabs(a - b) / scale) + " (relative)");
  }
  return a;
}

double normalization_constant(const Domain& domain, const Potential& potential, std::size_t resolution) {
  return checked_quadrature(
      domain.bbox(), resolution, [&](Vec2 x) { return std::exp(-potential.value(x)); },
      [&](Vec2 x) { return domain.contains(x); });
}

double region_measure(const AnalyticDensity& density, const Region2D& region, std::size_t resolution) {
  if (region.degenerate()) return 0.0;
  return checked_quadrature(
      density.domain().bbox(), resolution, [&](Vec2 x) { return density(x); },
      [&](Vec2 x) { return density.domain().contains(x) && region.contains(x); });
}

double region_measure(const AnalyticDensity& density, double lambda, std::size_t resolution) {
  return checked_quadrature(
      density.domain().bbox(), resolution, [&](Vec2 x) { return density(x); },
      [&](Vec2 x) { return density(x) > lambda; });
}

namespace {

template <class F>
double sup_norm_impl(F&& estimate, const AnalyticDensity& density, const Grid2D& grid, double margin) {
  if (!(margin >= 0.0)) throw ConfigError("interior margin must be non-negative");
  double err = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec2 x = grid.node(k);
    if (!density.domain().contains(x)) continue;
    if (density.domain().boundary_distance(x) <= margin) continue;
    err = std::max(err, std::fabs(estimate(k, x) - density(x)));
    ++used;
  }
  if (used == 0) throw NoInteriorNodes("no grid node is farther than the margin from the boundary");
  return err;
}

}  // namespace

double sup_norm_error(const std::function<double(Vec2)>& estimate, const AnalyticDensity& density,
                      const Grid2D& grid, double margin) {
  return sup_norm_impl([&](std::size_t, Vec2 x) { return estimate(x); }, density, grid, margin);
}

double sup_norm_error(const DensityEstimate& estimate, const AnalyticDensity& density, const Grid2D& grid,
                      double margin) {
  const ScalarField f = evaluate_on_grid(estimate, grid);
  return sup_norm_impl([&](std::size_t k, Vec2) { return f.values[k]; }, density, grid, margin);
}

double occupation_fraction(const Trajectory& trajectory, const std::function<bool(Vec2)>& region) {
  if (trajectory.positions.empty()) throw DegenerateInput("empty trajectory");
  std::size_t c = 0;
  for (Vec2 p : trajectory.positions) c += region(p);
  return static_cast<double>(c) / static_cast<double>(trajectory.positions.size());
}

double occupation_fraction(const Trajectory& trajectory, const Region2D& region) {
  return occupation_fraction(trajectory, [&](Vec2 p) { return region.contains(p); });
}

double occupation_fraction(const Trajectory& trajectory, const Domain& region) {
  return occupation_fraction(trajectory, [&](Vec2 p) { return region.contains(p); });
}

std::vector<Vec2> level_nodes(const AnalyticDensity& density, double lambda, double pitch) {
  const BBox& box = density.domain().bbox();
  const auto nx = static_cast<std::size_t>(std::floor(box.width() / pitch)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor(box.height() / pitch)) + 1;
  std::vector<Vec2> out;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Vec2 p{box.lo.x + static_cast<double>(i) * pitch, box.lo.y + static_cast<double>(j) * pitch};
      if (density(p) > lambda) out.push_back(p);
    }
  }
  return out;
}

GradientRange gradient_range(const AnalyticDensity& density, double lo, double hi, double pitch) {
  const BBox& box = density.domain().bbox();
  const auto nx = static_cast<std::size_t>(std::floor(box.width() / pitch)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor(box.height() / pitch)) + 1;
  GradientRange r{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Vec2 p{box.lo.x + static_cast<double>(i) * pitch, box.lo.y + static_cast<double>(j) * pitch};
      const double g = density(p);
      if (!density.domain().contains(p) || g < lo || g > hi) continue;
      const double n = norm(density.gradient(p));
      r.min = std::min(r.min, n);
      r.max = std::max(r.max, n);
      ++r.nodes;
    }
  }
  if (r.nodes == 0) r.min = 0.0;
  return r;
}

}  // namespace rbmd
