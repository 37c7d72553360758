#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbmd/types.hpp"

namespace rbmd {

/// Half-edge Delaunay triangulation of a planar point set.
///
/// Halfedge e runs from vertex triangles[e] to triangles[next_halfedge(e)];
/// every triangle is counter-clockwise. halfedges[e] is the opposite
/// half-edge or -1 on the convex hull. Exact duplicates are skipped and do
/// not appear in any triangle.
struct Triangulation {
  std::vector<std::uint32_t> triangles;
  std::vector<std::int64_t> halfedges;
  std::vector<std::uint32_t> hull;  // counter-clockwise

  std::size_t triangle_count() const { return triangles.size() / 3; }
};

inline std::size_t next_halfedge(std::size_t e) { return e % 3 == 2 ? e - 2 : e + 1; }
inline std::size_t prev_halfedge(std::size_t e) { return e % 3 == 0 ? e + 2 : e - 1; }

/// Sweep-hull construction in O(n log n) expected time. Returns no triangles
/// when fewer than three distinct points are given or all are collinear.
Triangulation delaunay(std::span<const Vec2> points);

/// Squared circumradius of (a, b, c); infinite for collinear input.
double circumradius2(Vec2 a, Vec2 b, Vec2 c);

}  // namespace rbmd
