#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rbmd/types.hpp"

namespace rbmd {

struct Segment {
  Vec2 a;
  Vec2 b;
};

double point_segment_distance(Vec2 p, const Segment& s);

/// Uniform-grid bucketing shared by the point and segment indices.
class UniformGrid {
 public:
  UniformGrid() = default;
  UniformGrid(const BBox& box, double cell);

  std::int64_t col(double x) const;
  std::int64_t row(double y) const;
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double cell() const { return cell_; }
  const BBox& box() const { return box_; }
  std::size_t flat(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i);
  }
  bool in_range(std::int64_t i, std::int64_t j) const {
    return i >= 0 && j >= 0 && i < static_cast<std::int64_t>(nx_) && j < static_cast<std::int64_t>(ny_);
  }
  /// Chebyshev ring distance (in cells) from (i, j) to the grid rectangle.
  std::int64_t ring_offset(std::int64_t i, std::int64_t j) const;

 private:
  BBox box_;
  double cell_ = 1.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
};

/// Nearest-neighbour queries over a fixed point set.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Vec2> points);

  std::size_t size() const { return points_.size(); }
  /// Index into the original span of the point nearest to q.
  std::size_t nearest(Vec2 q) const;
  double nearest_distance(Vec2 q) const;

 private:
  std::vector<Vec2> points_;          // bucket order
  std::vector<std::size_t> original_; // bucket order -> input index
  std::vector<std::size_t> start_;    // per cell, size ncells + 1
  UniformGrid grid_;
};

/// Distance from a query point to the nearest of a fixed set of segments.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  explicit SegmentIndex(std::vector<Segment> segments);

  bool empty() const { return segments_.empty(); }
  double distance(Vec2 q) const;

 private:
  std::vector<Segment> segments_;
  std::vector<std::uint32_t> items_;
  std::vector<std::size_t> start_;
  UniformGrid grid_;
};

}  // namespace rbmd
