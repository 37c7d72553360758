#include "rbmd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbmd/contour.hpp"
#include "rbmd/delaunay.hpp"
#include "rbmd/errors.hpp"
#include "rbmd/spatial_index.hpp"
#include "hull_carve.hpp"

namespace rbmd {
namespace {

Region2D degenerate_hull(std::span<const Vec2> points, const Triangulation& tri, double r) {
  // All points collinear: the hull order is the sorted chain.
  std::vector<Vec2> pts;
  std::vector<Segment> segs;
  const auto& chain = tri.hull;
  std::vector<bool> touched(chain.size(), false);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Vec2 a = points[chain[k]], b = points[chain[k + 1]];
    if (distance(a, b) <= 2.0 * r) {
      segs.push_back({a, b});
      touched[k] = touched[k + 1] = true;
    }
  }
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!touched[k]) pts.push_back(points[chain[k]]);
  }
  nlohmann::json meta{{"kind", "alpha_hull"}, {"r", r}, {"degenerate", true}};
  return Region2D({}, std::move(pts), std::move(segs), std::move(meta));
}

}  // namespace

Region2D r_convex_hull(std::span<const Vec2> points, double r) {
  if (points.empty()) throw EmptySet("r-convex hull of an empty point set");
  if (!(r > 0.0)) throw DegenerateInput("r-convex hull radius must be positive");
  const Triangulation tri = delaunay(points);
  if (tri.triangles.empty()) return degenerate_hull(points, tri, r);

  const std::size_t ntri = tri.triangle_count();
  const double r2 = r * r;
  std::vector<bool> kept(ntri);
  for (std::size_t t = 0; t < ntri; ++t) {
    kept[t] = circumradius2(points[tri.triangles[3 * t]], points[tri.triangles[3 * t + 1]],
                            points[tri.triangles[3 * t + 2]]) <= r2;
  }
  auto kept_he = [&](std::int64_t e) { return e >= 0 && kept[static_cast<std::size_t>(e) / 3]; };

  std::vector<bool> on_triangle(points.size(), false);
  std::vector<bool> boundary(tri.triangles.size(), false);
  for (std::size_t e = 0; e < tri.triangles.size(); ++e) {
    if (!kept[e / 3]) continue;
    on_triangle[tri.triangles[e]] = true;
    boundary[e] = !kept_he(tri.halfedges[e]);
  }

  std::vector<Region2D::Loop> loops;
  std::vector<bool> used(tri.triangles.size(), false);
  for (std::size_t e0 = 0; e0 < tri.triangles.size(); ++e0) {
    if (!boundary[e0] || used[e0]) continue;
    Region2D::Loop loop;
    std::size_t e = e0;
    while (!used[e]) {
      used[e] = true;
      loop.push_back(points[tri.triangles[e]]);
      std::size_t n = next_halfedge(e);
      while (kept_he(tri.halfedges[n])) n = next_halfedge(static_cast<std::size_t>(tri.halfedges[n]));
      e = n;
    }
    loops.push_back(std::move(loop));
  }

  // Alpha-complex edges outside every kept triangle: Gabriel edges of length
  // at most 2r.
  std::vector<Segment> segs;
  std::vector<bool> on_segment(points.size(), false);
  for (std::size_t e = 0; e < tri.triangles.size(); ++e) {
    const std::int64_t twin = tri.halfedges[e];
    if (kept[e / 3] || kept_he(twin)) continue;
    if (twin >= 0 && static_cast<std::size_t>(twin) < e) continue;
    const std::uint32_t ia = tri.triangles[e], ib = tri.triangles[next_halfedge(e)];
    const Vec2 a = points[ia], b = points[ib];
    if (distance(a, b) > 2.0 * r) continue;
    auto blocks = [&](std::size_t he) {
      const Vec2 c = points[tri.triangles[prev_halfedge(he)]];
      return dot(a - c, b - c) <= 0.0;  // c inside the diametral disk
    };
    if (blocks(e)) continue;
    if (twin >= 0 && blocks(static_cast<std::size_t>(twin))) continue;
    segs.push_back({a, b});
    on_segment[ia] = on_segment[ib] = true;
  }

  std::vector<Vec2> isolated;
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(points[a], points[b]) || (points[a] == points[b] && a < b);
  });
  // Duplicates are skipped by the triangulation; a copy is covered when any
  // coincident point is.
  for (std::size_t k = 0; k < order.size();) {
    std::size_t m = k;
    bool covered = false;
    while (m < order.size() && points[order[m]] == points[order[k]]) {
      covered = covered || on_triangle[order[m]] || on_segment[order[m]];
      ++m;
    }
    if (!covered) isolated.push_back(points[order[k]]);
    k = m;
  }

  // Edges of the alpha shape stand for arcs of empty r-balls; cut the caps
  // between chord and arc. A point whose corner is cut away entirely stays
  // as an isolated member.
  loops = detail::carve_caps(loops, r);
  const Region2D carved(loops, {}, segs);
  for (std::size_t k = 0; k < order.size();) {
    std::size_t m = k;
    bool lost = false;
    while (m < order.size() && points[order[m]] == points[order[k]]) {
      lost = lost || (on_triangle[order[m]] && !on_segment[order[m]]);
      ++m;
    }
    if (lost && !carved.contains(points[order[k]])) isolated.push_back(points[order[k]]);
    k = m;
  }

  nlohmann::json meta{{"kind", "alpha_hull"}, {"r", r}, {"degenerate", loops.empty()}};
  return Region2D(std::move(loops), std::move(isolated), std::move(segs), std::move(meta));
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) throw EmptySet("Hausdorff distance needs two non-empty sets");
  const PointIndex ia(a), ib(b);
  double d = 0.0;
  for (Vec2 p : a) d = std::max(d, ib.nearest_distance(p));
  for (Vec2 p : b) d = std::max(d, ia.nearest_distance(p));
  return d;
}

std::vector<Vec2> discretize_region(const Region2D& region, double pitch) {
  if (!(pitch > 0.0)) throw DegenerateInput("discretization pitch must be positive");
  std::vector<Vec2> out;
  auto subdivide = [&](Vec2 a, Vec2 b, bool include_end) {
    const double len = distance(a, b);
    const auto n = static_cast<std::size_t>(std::ceil(len / pitch));
    out.push_back(a);
    for (std::size_t k = 1; k < n; ++k) out.push_back(a + (static_cast<double>(k) / static_cast<double>(n)) * (b - a));
    if (include_end && n > 0) out.push_back(b);
  };
  for (const auto& loop : region.loops()) {
    for (std::size_t i = 0, n = loop.size(); i < n; ++i) subdivide(loop[i], loop[(i + 1) % n], false);
  }
  for (const auto& s : region.segments()) subdivide(s.a, s.b, true);
  for (Vec2 p : region.points()) out.push_back(p);
  if (!region.degenerate()) {
    const BBox& box = region.bbox();
    const auto nx = static_cast<std::size_t>(std::floor(box.width() / pitch)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor(box.height() / pitch)) + 1;
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const Vec2 p{box.lo.x + static_cast<double>(i) * pitch, box.lo.y + static_cast<double>(j) * pitch};
        if (region.contains(p)) out.push_back(p);
      }
    }
  }
  return out;
}

double parallel_set_area(const Region2D& region, double eps, std::size_t grid) {
  if (!(eps > 0.0)) throw DegenerateInput("parallel set width must be positive");
  if (region.empty() || grid == 0) return 0.0;
  const BBox box = region.bbox().inflated(eps);
  const double cx = box.width() / static_cast<double>(grid);
  const double cy = box.height() / static_cast<double>(grid);
  std::size_t count = 0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double y = box.lo.y + (static_cast<double>(j) + 0.5) * cy;
    for (std::size_t i = 0; i < grid; ++i) {
      const Vec2 p{box.lo.x + (static_cast<double>(i) + 0.5) * cx, y};
      const double d = region.distance(p);
      if (d > 0.0 && d <= eps) ++count;
    }
  }
  return static_cast<double>(count) * cx * cy;
}

Region2D polygonize(const Domain& domain, double pitch) {
  if (!(pitch > 0.0)) throw DegenerateInput("polygonization pitch must be positive");
  const BBox box = domain.bbox().inflated(pitch);
  const auto nx = static_cast<std::size_t>(std::ceil(box.width() / pitch)) + 1;
  const auto ny = static_cast<std::size_t>(std::ceil(box.height() / pitch)) + 1;
  ScalarField f{Grid2D(BBox{box.lo, {box.lo.x + static_cast<double>(nx - 1) * pitch,
                                     box.lo.y + static_cast<double>(ny - 1) * pitch}},
                       nx, ny),
                {}};
  f.values.resize(nx * ny);
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = -domain.level(f.grid.node(k));
  Region2D r = contour_region(f, 0.0);
  return r.with_meta({{"kind", "domain_polygon"}, {"pitch", pitch}});
}

}  // namespace rbmd
