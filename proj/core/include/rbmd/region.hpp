#pragma once

#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbmd/spatial_index.hpp"
#include "rbmd/types.hpp"

namespace rbmd {

/// Planar set bounded by closed polygonal loops, plus optional zero-area
/// components (isolated points and segments).
///
/// Loops are stored without repeating the first vertex. Counter-clockwise
/// loops are outer boundaries and clockwise loops are holes; membership uses
/// the even-odd rule and treats points within a small tolerance of any
/// boundary or zero-area component as members.
class Region2D {
 public:
  using Loop = std::vector<Vec2>;

  Region2D() = default;
  explicit Region2D(std::vector<Loop> loops, std::vector<Vec2> points = {}, std::vector<Segment> segments = {},
                    nlohmann::json meta = nlohmann::json::object());

  const std::vector<Loop>& loops() const { return loops_; }
  /// One flag per loop; true for clockwise (hole) loops.
  const std::vector<bool>& holes() const { return holes_; }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const nlohmann::json& meta() const { return meta_; }

  /// No loops: the region has empty interior.
  bool degenerate() const { return loops_.empty(); }
  bool empty() const { return loops_.empty() && points_.empty() && segments_.empty(); }

  bool contains(Vec2 p) const;
  /// Euclidean distance to the region (0 for members).
  double distance(Vec2 p) const;

  double area() const;
  double perimeter() const;
  const BBox& bbox() const { return bbox_; }
  double tolerance() const { return tol_; }

  Region2D with_meta(nlohmann::json meta) const;

  nlohmann::json to_json() const;
  static Region2D from_json(const nlohmann::json& j);

 private:
  struct Index;

  std::vector<Loop> loops_;
  std::vector<bool> holes_;
  std::vector<Vec2> points_;
  std::vector<Segment> segments_;
  nlohmann::json meta_ = nlohmann::json::object();
  BBox bbox_;
  double tol_ = 0.0;
  std::shared_ptr<const Index> index_;
};

double signed_area(const Region2D::Loop& loop);

}  // namespace rbmd
