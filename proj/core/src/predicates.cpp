#include "rbmd/predicates.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace rbmd::predicates {
namespace {

constexpr double kEps = 0x1.0p-53;
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

struct Expansion {
  std::array<double, 16> c{};
  std::size_t n = 0;

  // Shewchuk's GROW-EXPANSION: keeps components non-overlapping and ordered
  // by increasing magnitude.
  void grow(double b) {
    double q = b;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = q + c[i];
      const double bv = s - q;
      const double av = s - bv;
      const double err = (q - av) + (c[i] - bv);
      c[i] = err;
      q = s;
    }
    c[n++] = q;
  }

  void add_product(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    grow(e);
    grow(p);
  }

  double sign_value() const {
    for (std::size_t i = n; i-- > 0;) {
      if (c[i] != 0.0) return c[i];
    }
    return 0.0;
  }
};

double orient2d_exact(Vec2 a, Vec2 b, Vec2 c) {
  Expansion e;
  e.add_product(a.x, b.y);
  e.add_product(-a.x, c.y);
  e.add_product(-c.x, b.y);
  e.add_product(-a.y, b.x);
  e.add_product(a.y, c.x);
  e.add_product(c.y, b.x);
  return e.sign_value();
}

}  // namespace

double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kCcwErrBound * (std::fabs(left) + std::fabs(right));
  if (det > bound || -det > bound) return det;
  return orient2d_exact(a, b, c);
}

double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  if (det > kIccErrBound * permanent || -det > kIccErrBound * permanent) return det;

  using L = long double;
  const L ax = L(a.x) - L(d.x), ay = L(a.y) - L(d.y);
  const L bx = L(b.x) - L(d.x), by = L(b.y) - L(d.y);
  const L cx = L(c.x) - L(d.x), cy = L(c.y) - L(d.y);
  const L r = (ax * ax + ay * ay) * (bx * cy - cx * by) + (bx * bx + by * by) * (cx * ay - ax * cy) +
              (cx * cx + cy * cy) * (ax * by - bx * ay);
  return static_cast<double>(r);
}

}  // namespace rbmd::predicates
