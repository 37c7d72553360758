#pragma once

// Independent reference computations used to derive and check frozen values.
// Nothing here calls into the library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <rbmd/rng.hpp>
#include <rbmd/types.hpp>

namespace oracle {

using rbmd::Vec2;

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (b - a) / 12.0 * (fa + 4.0 * flm + fm);
      const double right = (b - a) / 12.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
      }
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec.run(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// Integral of exp(-(x^2 + y^2)) over {|y| <= outer(x)} minus {|y| <= inner(x)}
// for x in [x0, x1], integrating y in closed form with erf.
inline double gaussian_slab_integral(const std::function<double(double)>& outer,
                                     const std::function<double(double)>& inner, double x0, double x1) {
  const double sp = std::sqrt(std::numbers::pi);
  auto f = [&](double x) {
    const double ya = outer(x);
    const double yb = std::min(inner(x), ya);
    return std::exp(-x * x) * sp * (std::erf(ya) - std::erf(yb));
  };
  return simpson(f, x0, x1, 1e-14);
}

inline double chord(double radius2, double dx2) { return dx2 >= radius2 ? 0.0 : std::sqrt(radius2 - dx2); }

// c = int over {4x^2/9 + y^2 <= 1} minus B((0.8, 0), 0.5) of exp(-(x^2 + y^2)).
inline double holed_ellipse_c() {
  auto outer = [](double x) { return chord(1.0, 4.0 * x * x / 9.0); };
  auto inner = [](double x) { return chord(0.25, (x - 0.8) * (x - 0.8)); };
  // Split at the kinks so Simpson sees smooth pieces.
  double s = 0.0;
  const double cuts[] = {-1.5, 0.3, 1.3, 1.5};
  for (int k = 0; k < 3; ++k) s += gaussian_slab_integral(outer, inner, cuts[k], cuts[k + 1]);
  return s;
}

// pi({g > lambda}) for g = exp(-|x|^2) / c on the holed ellipse: the disk of
// radius rho = sqrt(-log(lambda c)), clipped to the ellipse, minus the hole.
inline double holed_ellipse_level_content(double lambda, double c) {
  const double rho2 = -std::log(lambda * c);
  if (rho2 <= 0.0) return 0.0;
  const double rho = std::sqrt(rho2);
  auto outer = [&](double x) { return std::min(chord(rho2, x * x), chord(1.0, 4.0 * x * x / 9.0)); };
  auto inner = [](double x) { return chord(0.25, (x - 0.8) * (x - 0.8)); };
  const double xmax = std::min(rho, 1.5);
  std::vector<double> cuts{-xmax, xmax};
  auto cut = [&](double x) {
    if (x > -xmax && x < xmax) cuts.push_back(x);
  };
  cut(0.3);
  cut(1.3);
  // level circle against the hole and against the ellipse
  cut((rho2 - 0.25 + 0.64) / 1.6);
  if (rho2 > 1.0) {
    cut(std::sqrt((rho2 - 1.0) * 9.0 / 5.0));
    cut(-std::sqrt((rho2 - 1.0) * 9.0 / 5.0));
  }
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) s += gaussian_slab_integral(outer, inner, cuts[k], cuts[k + 1]);
  return s / c;
}

// Nearest point on the ellipse ((x - cx)/a)^2 + ((y - cy)/b)^2 = 1 by dense
// sampling at roughly the given arc-length pitch.
inline Vec2 ellipse_nearest(Vec2 center, double a, double b, Vec2 z, double pitch) {
  const double perimeter = std::numbers::pi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b)));
  const auto n = static_cast<std::size_t>(std::ceil(perimeter / pitch));
  Vec2 best{};
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const Vec2 p{center.x + a * std::cos(t), center.y + b * std::sin(t)};
    const double d = rbmd::norm2(p - z);
    if (d < bd) {
      bd = d;
      best = p;
    }
  }
  return best;
}

// n points uniform in area on the annulus 0.5 <= |x| <= 1.
inline std::vector<Vec2> annulus_points(std::size_t n, std::uint64_t seed) {
  rbmd::Rng g(seed);
  std::vector<Vec2> pts;
  while (pts.size() < n) {
    const double r = std::sqrt(0.25 + 0.75 * g.uniform());
    const double t = 2.0 * std::numbers::pi * g.uniform();
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return pts;
}

// Direct kernel sum in long double.
inline long double gaussian_kde(std::span<const Vec2> samples, double h, Vec2 x) {
  long double s = 0.0L;
  for (Vec2 p : samples) {
    const long double dx = static_cast<long double>(x.x) - p.x;
    const long double dy = static_cast<long double>(x.y) - p.y;
    s += std::exp(-(dx * dx + dy * dy) / (2.0L * h * h));
  }
  return s / (2.0L * std::numbers::pi_v<long double> * h * h * static_cast<long double>(samples.size()));
}

// Membership in the r-convex hull: x is excluded iff some open ball of radius r
// containing x avoids every sample. Ball centres are searched on an n x n
// lattice of cell midpoints over [lo, hi].
struct BallHull {
  std::vector<Vec2> centers;

  BallHull(std::span<const Vec2> samples, double r, Vec2 lo, Vec2 hi, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 c{lo.x + (hi.x - lo.x) * (static_cast<double>(i) + 0.5) / static_cast<double>(n),
                     lo.y + (hi.y - lo.y) * (static_cast<double>(j) + 0.5) / static_cast<double>(n)};
        bool ok = true;
        for (Vec2 p : samples) {
          if (rbmd::distance(p, c) < r) {
            ok = false;
            break;
          }
        }
        if (ok) centers.push_back(c);
      }
    }
    r_ = r;
  }

  bool member(Vec2 x) const {
    for (Vec2 c : centers) {
      if (rbmd::distance(c, x) < r_) return false;
    }
    return true;
  }

 private:
  double r_ = 0.0;
};

// Smallest candidate value lambda in the sample value set (or 0) with
// #{v > lambda} <= (1 - tau) n.
inline double fixed_content_scan(std::span<const double> v, double tau) {
  const double bound = (1.0 - tau) * static_cast<double>(v.size());
  std::vector<double> candidates(v.begin(), v.end());
  candidates.push_back(0.0);
  double best = std::numeric_limits<double>::infinity();
  for (double lambda : candidates) {
    if (lambda < 0.0) continue;
    std::size_t above = 0;
    for (double x : v) above += x > lambda;
    if (static_cast<double>(above) <= bound) best = std::min(best, lambda);
  }
  return best;
}

// The reflected step rule written out for a disk, with the radial projection
// in closed form.
struct DiskStepCounts {
  std::uint64_t accepted = 0, reflected = 0, rejected = 0;
  std::vector<Vec2> path;
};

inline DiskStepCounts disk_scheme(Vec2 center, double radius, Vec2 x0, double delta, std::uint64_t n,
                                  std::uint64_t seed, const std::function<Vec2(Vec2)>& mu) {
  DiskStepCounts out;
  rbmd::Rng rng = rbmd::Rng::stream(seed, rbmd::kSimulationStream);
  Vec2 x = x0;
  out.path.push_back(x);
  const double sd = std::sqrt(delta);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Vec2 z = rng.normal_pair();
    const Vec2 y = x + sd * z + delta * mu(x);
    const Vec2 d = y - center;
    const double r = std::hypot(d.x, d.y);
    if (r <= radius) {
      x = y;
      ++out.accepted;
    } else {
      const Vec2 s = center + ((2.0 * radius - r) / r) * d;
      const Vec2 ds = s - center;
      if (std::hypot(ds.x, ds.y) <= radius) {
        x = s;
        ++out.reflected;
      } else {
        ++out.rejected;
      }
    }
    out.path.push_back(x);
  }
  return out;
}

}  // namespace oracle
