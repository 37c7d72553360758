#pragma once

#include <memory>
#include <optional>

#include <nlohmann/json.hpp>

#include "rbmd/types.hpp"

namespace rbmd {

enum class Membership { Inside, Boundary, Outside };

/// Nearest boundary point of a domain.
struct Projection {
  Vec2 point;
  double distance = 0.0;
  /// Another boundary point lies within tol_d of the same distance but more
  /// than tol_proj away from `point`.
  bool ambiguous = false;
};

/// Compact planar region described implicitly.
///
/// `level(p)` is negative inside, positive outside and zero on the boundary.
/// For disks it is the signed distance; for ellipses it is a scaled algebraic
/// level that agrees in sign with the signed distance. Set operations combine
/// levels with max(), so membership of composite domains is exact up to the
/// boundary tolerance tol_b = 1e-9 * bbox diagonal.
///
/// Domains are immutable values; copies share their node tree.
class Domain {
 public:
  static constexpr double kTolProj = 1e-6;
  static constexpr double kTolDist = 1e-8;

  static Domain disk(Vec2 center, double radius);
  /// Axis-aligned ellipse ((x-cx)/a)^2 + ((y-cy)/b)^2 <= 1.
  static Domain ellipse(Vec2 center, double semi_x, double semi_y);
  static Domain difference(const Domain& a, const Domain& b);
  static Domain intersection(const Domain& a, const Domain& b);

  double level(Vec2 p) const;
  Membership classify(Vec2 p) const;
  /// Inside or on the boundary (within tol_b).
  bool contains(Vec2 p) const { return level(p) <= tol_b_; }

  Projection project(Vec2 z) const;
  /// Unit normal pointing into the domain at a boundary point.
  Vec2 inner_normal(Vec2 x) const;
  double boundary_distance(Vec2 p) const { return project(p).distance; }

  const BBox& bbox() const { return bbox_; }
  double tol_b() const { return tol_b_; }

  nlohmann::json to_json() const;
  static Domain from_json(const nlohmann::json& j);

  struct Node;

 private:
  explicit Domain(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
  BBox bbox_;
  double tol_b_ = 0.0;
};

/// E \ B((4/5, 0), 1/2) with E = {4x^2/9 + y^2 <= 1}: the holed ellipse used
/// by the reference simulation experiment.
Domain holed_ellipse();

/// 2 * xi(z) - z, or nullopt when the projection of z is ambiguous.
std::optional<Vec2> try_symmetric_point(const Domain& domain, Vec2 z);
/// Throws AmbiguousProjection when the projection of z is not unique.
Vec2 symmetric_point(const Domain& domain, Vec2 z);

}  // namespace rbmd
