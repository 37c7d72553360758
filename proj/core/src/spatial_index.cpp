#include "rbmd/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbmd/errors.hpp"

namespace rbmd {

double point_segment_distance(Vec2 p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = norm2(d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

UniformGrid::UniformGrid(const BBox& box, double cell) : box_(box), cell_(cell) {
  if (!(cell_ > 0.0) || !std::isfinite(cell_)) cell_ = 1.0;
  nx_ = static_cast<std::size_t>(std::floor(box.width() / cell_)) + 1;
  ny_ = static_cast<std::size_t>(std::floor(box.height() / cell_)) + 1;
}

std::int64_t UniformGrid::col(double x) const {
  return static_cast<std::int64_t>(std::floor((x - box_.lo.x) / cell_));
}

std::int64_t UniformGrid::row(double y) const {
  return static_cast<std::int64_t>(std::floor((y - box_.lo.y) / cell_));
}

std::int64_t UniformGrid::ring_offset(std::int64_t i, std::int64_t j) const {
  const auto nx = static_cast<std::int64_t>(nx_), ny = static_cast<std::int64_t>(ny_);
  const std::int64_t di = i < 0 ? -i : (i >= nx ? i - nx + 1 : 0);
  const std::int64_t dj = j < 0 ? -j : (j >= ny ? j - ny + 1 : 0);
  return std::max(di, dj);
}

namespace {

double cell_size_for(const BBox& box, std::size_t n, double per_cell) {
  const double w = box.width(), h = box.height();
  const double area = w * h;
  const double count = std::max<double>(1.0, static_cast<double>(n) / per_cell);
  if (area > 0.0) return std::sqrt(area / count);
  const double extent = std::max(w, h);
  return extent > 0.0 ? extent / count : 1.0;
}

// Visits in-range cells of ring k around (ci, cj).
template <class F>
void for_ring(const UniformGrid& g, std::int64_t ci, std::int64_t cj, std::int64_t k, F&& f) {
  if (k == 0) {
    if (g.in_range(ci, cj)) f(ci, cj);
    return;
  }
  for (std::int64_t i = ci - k; i <= ci + k; ++i) {
    if (g.in_range(i, cj - k)) f(i, cj - k);
    if (g.in_range(i, cj + k)) f(i, cj + k);
  }
  for (std::int64_t j = cj - k + 1; j <= cj + k - 1; ++j) {
    if (g.in_range(ci - k, j)) f(ci - k, j);
    if (g.in_range(ci + k, j)) f(ci + k, j);
  }
}

std::int64_t max_ring(const UniformGrid& g, std::int64_t ci, std::int64_t cj) {
  const auto nx = static_cast<std::int64_t>(g.nx()), ny = static_cast<std::int64_t>(g.ny());
  return std::max({std::abs(ci), std::abs(cj), std::abs(nx - 1 - ci), std::abs(ny - 1 - cj)});
}

}  // namespace

PointIndex::PointIndex(std::span<const Vec2> points) {
  if (points.empty()) throw EmptySet("point index over an empty set");
  const BBox box = bounding_box(points);
  grid_ = UniformGrid(box, cell_size_for(box, points.size(), 2.0));
  const std::size_t ncells = grid_.nx() * grid_.ny();
  start_.assign(ncells + 1, 0);
  std::vector<std::size_t> cell_of(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto i = std::clamp<std::int64_t>(grid_.col(points[k].x), 0, static_cast<std::int64_t>(grid_.nx()) - 1);
    const auto j = std::clamp<std::int64_t>(grid_.row(points[k].y), 0, static_cast<std::int64_t>(grid_.ny()) - 1);
    cell_of[k] = grid_.flat(i, j);
    ++start_[cell_of[k] + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c) start_[c + 1] += start_[c];
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  points_.resize(points.size());
  original_.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::size_t slot = fill[cell_of[k]]++;
    points_[slot] = points[k];
    original_[slot] = k;
  }
}

std::size_t PointIndex::nearest(Vec2 q) const {
  const std::int64_t ci = grid_.col(q.x), cj = grid_.row(q.y);
  const std::int64_t k0 = grid_.ring_offset(ci, cj);
  const std::int64_t kmax = max_ring(grid_, ci, cj);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_slot = 0;
  for (std::int64_t k = k0; k <= kmax; ++k) {
    for_ring(grid_, ci, cj, k, [&](std::int64_t i, std::int64_t j) {
      const std::size_t c = grid_.flat(i, j);
      for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
        const double d = norm2(points_[s] - q);
        if (d < best || (d == best && original_[s] < original_[best_slot])) {
          best = d;
          best_slot = s;
        }
      }
    });
    const double reach = static_cast<double>(k) * grid_.cell();
    if (best < reach * reach) break;
  }
  return original_[best_slot];
}

double PointIndex::nearest_distance(Vec2 q) const {
  const std::int64_t ci = grid_.col(q.x), cj = grid_.row(q.y);
  const std::int64_t k0 = grid_.ring_offset(ci, cj);
  const std::int64_t kmax = max_ring(grid_, ci, cj);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t k = k0; k <= kmax; ++k) {
    for_ring(grid_, ci, cj, k, [&](std::int64_t i, std::int64_t j) {
      const std::size_t c = grid_.flat(i, j);
      for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) best = std::min(best, norm2(points_[s] - q));
    });
    const double reach = static_cast<double>(k) * grid_.cell();
    if (best <= reach * reach) break;
  }
  return std::sqrt(best);
}

SegmentIndex::SegmentIndex(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) return;
  BBox box;
  double total_len = 0.0;
  for (const auto& s : segments_) {
    box.expand(s.a);
    box.expand(s.b);
    total_len += rbmd::distance(s.a, s.b);
  }
  const double mean_len = total_len / static_cast<double>(segments_.size());
  double cell = cell_size_for(box, segments_.size(), 2.0);
  cell = std::max(cell, 2.0 * mean_len);
  grid_ = UniformGrid(box, cell);
  const std::size_t ncells = grid_.nx() * grid_.ny();
  start_.assign(ncells + 1, 0);
  auto cells_of = [&](const Segment& s, auto&& f) {
    const auto i0 = grid_.col(std::min(s.a.x, s.b.x)), i1 = grid_.col(std::max(s.a.x, s.b.x));
    const auto j0 = grid_.row(std::min(s.a.y, s.b.y)), j1 = grid_.row(std::max(s.a.y, s.b.y));
    const auto nx = static_cast<std::int64_t>(grid_.nx()) - 1, ny = static_cast<std::int64_t>(grid_.ny()) - 1;
    for (auto j = std::clamp<std::int64_t>(j0, 0, ny); j <= std::clamp<std::int64_t>(j1, 0, ny); ++j)
      for (auto i = std::clamp<std::int64_t>(i0, 0, nx); i <= std::clamp<std::int64_t>(i1, 0, nx); ++i) f(grid_.flat(i, j));
  };
  for (const auto& s : segments_) cells_of(s, [&](std::size_t c) { ++start_[c + 1]; });
  for (std::size_t c = 0; c < ncells; ++c) start_[c + 1] += start_[c];
  items_.resize(start_.back());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    cells_of(segments_[k], [&](std::size_t c) { items_[fill[c]++] = static_cast<std::uint32_t>(k); });
  }
}

double SegmentIndex::distance(Vec2 q) const {
  if (segments_.empty()) return std::numeric_limits<double>::infinity();
  const std::int64_t ci = grid_.col(q.x), cj = grid_.row(q.y);
  const std::int64_t k0 = grid_.ring_offset(ci, cj);
  const std::int64_t kmax = max_ring(grid_, ci, cj);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t k = k0; k <= kmax; ++k) {
    for_ring(grid_, ci, cj, k, [&](std::int64_t i, std::int64_t j) {
      const std::size_t c = grid_.flat(i, j);
      for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
        best = std::min(best, point_segment_distance(q, segments_[items_[s]]));
      }
    });
    if (best <= static_cast<double>(k) * grid_.cell()) break;
  }
  return best;
}

}  // namespace rbmd
