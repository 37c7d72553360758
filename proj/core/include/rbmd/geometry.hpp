#pragma once

#include <span>
#include <vector>

#include "rbmd/domain.hpp"
#include "rbmd/region.hpp"
#include "rbmd/types.hpp"

namespace rbmd {

/// r-convex hull of a point set, built from the alpha complex with alpha = r.
///
/// Delaunay triangles with circumradius <= r form the area part; their
/// boundary is traced into loops, and the cap between each boundary edge and
/// the arc of the empty r-ball through its endpoints is cut away (arcs are
/// polylines within 3e-4 r of the circle). Edges of the alpha complex that
/// bound no kept triangle are kept as zero-area segments, and points left
/// outside every loop and segment as isolated points, so every input point is
/// a member.
///
/// A single point or a collinear set yields a region with no loops whose
/// meta carries "degenerate": true.
Region2D r_convex_hull(std::span<const Vec2> points, double r);

/// max(max_a min_b |a-b|, max_b min_a |a-b|). Throws EmptySet.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Samples a region so that every point of it lies within `pitch` of a
/// sample: loop vertices, loop edges and segments subdivided at spacing
/// <= pitch, isolated points, and interior lattice nodes at spacing pitch.
std::vector<Vec2> discretize_region(const Region2D& region, double pitch);

/// Area of {x : 0 < dist(x, region) <= eps}, counted on a grid x grid
/// lattice of cell midpoints over the region's box inflated by eps.
double parallel_set_area(const Region2D& region, double eps, std::size_t grid);

/// Polygonal approximation of a domain by contouring its level function on
/// a lattice with the given pitch.
Region2D polygonize(const Domain& domain, double pitch);

}  // namespace rbmd
