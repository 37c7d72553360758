#include "hull_carve.hpp"

#include <cmath>
#include <numbers>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace bg = boost::geometry;

namespace rbmd::detail {
namespace {

using Point = bg::model::d2::point_xy<double>;
using Polygon = bg::model::polygon<Point, false, true>;  // counter-clockwise, closed
using Multi = bg::model::multi_polygon<Polygon>;

// Arc polyline steps are at most this many radians, so the polyline stays
// within r (1 - cos(kArcStep / 2)) ~ 3e-4 r of the arc.
constexpr double kArcStep = 0.05;

Polygon ring_polygon(const Region2D::Loop& loop, bool reverse) {
  Polygon p;
  auto& ring = p.outer();
  if (reverse) {
    for (auto it = loop.rbegin(); it != loop.rend(); ++it) ring.emplace_back(it->x, it->y);
  } else {
    for (Vec2 v : loop) ring.emplace_back(v.x, v.y);
  }
  ring.push_back(ring.front());
  bg::correct(p);
  return p;
}

// Balanced pairwise union keeps each step small.
Multi union_all(std::vector<Multi> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<Multi> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < parts.size(); k += 2) {
      Multi u;
      bg::union_(parts[k], parts[k + 1], u);
      next.push_back(std::move(u));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace

std::vector<Region2D::Loop> carve_caps(const std::vector<Region2D::Loop>& loops, double r) {
  std::vector<Multi> outer, cut;
  for (const auto& loop : loops) {
    const bool hole = signed_area(loop) < 0.0;
    (hole ? cut : outer).push_back(Multi{ring_polygon(loop, hole)});
    for (std::size_t i = 0, n = loop.size(); i < n; ++i) {
      const Vec2 a = loop[i], b = loop[(i + 1) % n];
      const Vec2 d = b - a;
      const double len = norm(d);
      if (len == 0.0 || len > 2.0 * r) continue;
      const double sweep = 2.0 * std::asin(std::min(1.0, 0.5 * len / r));
      const auto steps = static_cast<std::size_t>(std::ceil(sweep / kArcStep));
      if (steps < 2) continue;
      // The region lies to the left of a -> b; the empty ball's centre to the right.
      const Vec2 right{d.y / len, -d.x / len};
      const Vec2 c = 0.5 * (a + b) + std::sqrt(std::max(0.0, r * r - 0.25 * len * len)) * right;
      const double t0 = std::atan2(a.y - c.y, a.x - c.x);
      Polygon cap;
      auto& ring = cap.outer();
      ring.emplace_back(a.x, a.y);
      // Clockwise about c from a to b passes through the left side of the chord.
      for (std::size_t k = 1; k < steps; ++k) {
        const double t = t0 - sweep * static_cast<double>(k) / static_cast<double>(steps);
        ring.emplace_back(c.x + r * std::cos(t), c.y + r * std::sin(t));
      }
      ring.emplace_back(b.x, b.y);
      ring.emplace_back(a.x, a.y);
      bg::correct(cap);
      cut.push_back(Multi{std::move(cap)});
    }
  }

  const Multi area = union_all(std::move(outer));
  const Multi removed = union_all(std::move(cut));
  Multi result;
  bg::difference(area, removed, result);

  std::vector<Region2D::Loop> out;
  auto take = [&out](const auto& ring) {
    Region2D::Loop l;
    for (std::size_t k = 0; k + 1 < ring.size(); ++k) l.push_back({bg::get<0>(ring[k]), bg::get<1>(ring[k])});
    if (l.size() >= 3) out.push_back(std::move(l));
  };
  for (const auto& poly : result) {
    take(poly.outer());
    for (const auto& inner : poly.inners()) take(inner);
  }
  return out;
}

}  // namespace rbmd::detail
