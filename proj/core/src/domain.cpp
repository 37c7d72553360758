#include "rbmd/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "rbmd/errors.hpp"

namespace rbmd {
namespace {

struct Disk {
  Vec2 center;
  double radius;
};

struct Ellipse {
  Vec2 center;
  double semi_x;
  double semi_y;
};

enum class SetOp { Difference, Intersection };

struct Composite {
  SetOp op;
  Domain a;
  Domain b;
};

Projection project_disk(const Disk& d, Vec2 z) {
  const Vec2 off = z - d.center;
  const double r = norm(off);
  Projection out;
  if (r == 0.0) {
    out.point = d.center + Vec2{d.radius, 0.0};
    out.distance = d.radius;
    out.ambiguous = true;
    return out;
  }
  out.point = d.center + (d.radius / r) * off;
  out.distance = std::fabs(r - d.radius);
  // Every boundary point is within 2r of the same distance from z.
  out.ambiguous = 2.0 * r < Domain::kTolDist && 2.0 * d.radius > Domain::kTolProj;
  return out;
}

// Nearest point by dense parametric sampling; used only when the root finder
// below fails to converge.
Vec2 ellipse_dense_nearest(double e0, double e1, Vec2 y, double pitch) {
  const double perimeter_bound = 2.0 * std::numbers::pi * e0;
  const auto samples = static_cast<long>(std::ceil(perimeter_bound / pitch));
  Vec2 best{e0, 0.0};
  double best_d = norm2(best - y);
  for (long k = 0; k < samples; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const Vec2 p{e0 * std::cos(th), e1 * std::sin(th)};
    const double d = norm2(p - y);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

// Closest point on the ellipse (x/e0)^2 + (y/e1)^2 = 1 with e0 >= e1 to a
// first-quadrant point y. Returns the point and whether the mirrored
// candidate across the major axis is equally near.
struct QuadrantResult {
  Vec2 point;
  bool two_sided = false;
};

QuadrantResult ellipse_quadrant(double e0, double e1, Vec2 y) {
  const double y0 = y.x, y1 = y.y;
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      // Lagrange condition: F(t) = (e0 y0/(t+e0^2))^2 + (e1 y1/(t+e1^2))^2 - 1 = 0
      // on t > -e1^2; F is convex and decreasing there.
      const double a0 = e0 * y0, a1 = e1 * y1;
      const double s0 = e0 * e0, s1 = e1 * e1;
      double lo = std::max(-s1 + a1, -s0 + a0);
      double hi = -s1 + std::hypot(a0, a1);
      auto f = [&](double t) {
        const double r0 = a0 / (t + s0), r1 = a1 / (t + s1);
        return r0 * r0 + r1 * r1 - 1.0;
      };
      auto fprime = [&](double t) {
        const double d0 = t + s0, d1 = t + s1;
        return -2.0 * (a0 * a0 / (d0 * d0 * d0) + a1 * a1 / (d1 * d1 * d1));
      };
      double t = hi;
      bool converged = false;
      for (int it = 0; it < 200; ++it) {
        const double ft = f(t);
        if (ft == 0.0) {
          converged = true;
          break;
        }
        if (ft > 0.0) lo = t; else hi = t;
        const double fp = fprime(t);
        double next = t - ft / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // damped: fall back to bisection
        const double step = std::fabs(next - t);
        t = next;
        const double scale = 1e-15 * (std::fabs(t) + s1);
        if (step <= scale || hi - lo <= scale) {
          converged = true;
          break;
        }
      }
      if (!converged) return {ellipse_dense_nearest(e0, e1, y, 1e-4), false};
      const Vec2 p{s0 * y0 / (t + s0), s1 * y1 / (t + s1)};
      // Near the major axis inside the evolute the mirrored point may tie.
      const double d = distance(p, y);
      const double dm = distance(Vec2{p.x, -p.y}, y);
      const bool tie = 2.0 * p.y > Domain::kTolProj && std::fabs(dm - d) < Domain::kTolDist;
      return {p, tie};
    }
    return {{0.0, e1}, false};
  }
  const double numer = e0 * y0;
  const double denom = e0 * e0 - e1 * e1;
  if (numer < denom) {
    const double xde = numer / denom;
    const Vec2 p{e0 * xde, e1 * std::sqrt(std::max(0.0, 1.0 - xde * xde))};
    return {p, 2.0 * p.y > Domain::kTolProj};
  }
  return {{e0, 0.0}, false};
}

Projection project_ellipse(const Ellipse& e, Vec2 z) {
  if (e.semi_x == e.semi_y) return project_disk(Disk{e.center, e.semi_x}, z);
  const Vec2 off = z - e.center;
  const bool swap = e.semi_y > e.semi_x;
  const double e0 = swap ? e.semi_y : e.semi_x;
  const double e1 = swap ? e.semi_x : e.semi_y;
  const Vec2 local = swap ? Vec2{off.y, off.x} : off;
  const QuadrantResult q = ellipse_quadrant(e0, e1, {std::fabs(local.x), std::fabs(local.y)});
  Vec2 p{std::copysign(q.point.x, local.x), std::copysign(q.point.y, local.y)};
  if (swap) p = {p.y, p.x};
  Projection out;
  out.point = e.center + p;
  out.distance = distance(out.point, z);
  out.ambiguous = q.two_sided;
  return out;
}

double ellipse_level(const Ellipse& e, Vec2 p) {
  const double u = (p.x - e.center.x) / e.semi_x;
  const double v = (p.y - e.center.y) / e.semi_y;
  return (std::hypot(u, v) - 1.0) * std::min(e.semi_x, e.semi_y);
}

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{0.0, 0.0};
}

Vec2 vec_from_json(const nlohmann::json& j, const char* key) {
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2) throw ConfigError(std::string("domain: '") + key + "' must be [x, y]");
  return {a[0].get<double>(), a[1].get<double>()};
}

}  // namespace

struct Domain::Node {
  std::variant<Disk, Ellipse, Composite> shape;
};

Domain::Domain(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          bbox_ = BBox::of(s.center - Vec2{s.radius, s.radius}, s.center + Vec2{s.radius, s.radius});
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          bbox_ = BBox::of(s.center - Vec2{s.semi_x, s.semi_y}, s.center + Vec2{s.semi_x, s.semi_y});
        } else {
          if (s.op == SetOp::Difference) {
            bbox_ = s.a.bbox();
          } else {
            const BBox& a = s.a.bbox();
            const BBox& b = s.b.bbox();
            bbox_ = BBox::of({std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)},
                             {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)});
          }
        }
      },
      node_->shape);
  tol_b_ = 1e-9 * bbox_.diagonal();
}

Domain Domain::disk(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw ConfigError("disk radius must be positive");
  return Domain(std::make_shared<const Node>(Node{Disk{center, radius}}));
}

Domain Domain::ellipse(Vec2 center, double semi_x, double semi_y) {
  if (!(semi_x > 0.0) || !(semi_y > 0.0)) throw ConfigError("ellipse semi-axes must be positive");
  return Domain(std::make_shared<const Node>(Node{Ellipse{center, semi_x, semi_y}}));
}

Domain Domain::difference(const Domain& a, const Domain& b) {
  return Domain(std::make_shared<const Node>(Node{Composite{SetOp::Difference, a, b}}));
}

Domain Domain::intersection(const Domain& a, const Domain& b) {
  return Domain(std::make_shared<const Node>(Node{Composite{SetOp::Intersection, a, b}}));
}

double Domain::level(Vec2 p) const {
  return std::visit(
      [p](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return distance(p, s.center) - s.radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return ellipse_level(s, p);
        } else {
          const double la = s.a.level(p);
          const double lb = s.b.level(p);
          return s.op == SetOp::Difference ? std::max(la, -lb) : std::max(la, lb);
        }
      },
      node_->shape);
}

Membership Domain::classify(Vec2 p) const {
  const double l = level(p);
  if (l < -tol_b_) return Membership::Inside;
  if (l <= tol_b_) return Membership::Boundary;
  return Membership::Outside;
}

Projection Domain::project(Vec2 z) const {
  return std::visit(
      [this, z](const auto& s) -> Projection {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return project_disk(s, z);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return project_ellipse(s, z);
        } else {
          // Nearer of the two constituent boundaries, restricted to candidates
          // that actually lie on the composite boundary.
          const Projection pa = s.a.project(z);
          const Projection pb = s.b.project(z);
          const bool va = std::fabs(level(pa.point)) <= tol_b_;
          const bool vb = std::fabs(level(pb.point)) <= tol_b_;
          if (va != vb) return va ? pa : pb;
          Projection best = pa.distance <= pb.distance ? pa : pb;
          if (va && vb && std::fabs(pa.distance - pb.distance) < kTolDist &&
              distance(pa.point, pb.point) > kTolProj) {
            best.ambiguous = true;
          }
          return best;
        }
      },
      node_->shape);
}

Vec2 Domain::inner_normal(Vec2 x) const {
  return std::visit(
      [x](const auto& s) -> Vec2 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return unit(s.center - x);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          const Vec2 d = x - s.center;
          return unit(Vec2{-d.x / (s.semi_x * s.semi_x), -d.y / (s.semi_y * s.semi_y)});
        } else {
          const bool on_a = std::fabs(s.a.level(x)) <= std::fabs(s.b.level(x));
          if (on_a) return s.a.inner_normal(x);
          return s.op == SetOp::Difference ? -s.b.inner_normal(x) : s.b.inner_normal(x);
        }
      },
      node_->shape);
}

nlohmann::json Domain::to_json() const {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {{"type", "disk"}, {"center", {s.center.x, s.center.y}}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return {{"type", "ellipse"}, {"center", {s.center.x, s.center.y}}, {"semi_axes", {s.semi_x, s.semi_y}}};
        } else {
          return {{"type", s.op == SetOp::Difference ? "difference" : "intersection"},
                  {"a", s.a.to_json()},
                  {"b", s.b.to_json()}};
        }
      },
      node_->shape);
}

Domain Domain::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("domain: expected an object with 'type'");
  const auto type = j.at("type").get<std::string>();
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : j.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
        throw ConfigError("domain '" + type + "': unknown key '" + k + "'");
      }
    }
  };
  try {
    if (type == "disk") {
      check_keys({"type", "center", "radius"});
      return disk(vec_from_json(j, "center"), j.at("radius").get<double>());
    }
    if (type == "ellipse") {
      check_keys({"type", "center", "semi_axes"});
      const Vec2 ax = vec_from_json(j, "semi_axes");
      return ellipse(vec_from_json(j, "center"), ax.x, ax.y);
    }
    if (type == "difference" || type == "intersection") {
      check_keys({"type", "a", "b"});
      const Domain a = from_json(j.at("a"));
      const Domain b = from_json(j.at("b"));
      return type == "difference" ? difference(a, b) : intersection(a, b);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
  throw ConfigError("domain: unknown type '" + type + "'");
}

Domain holed_ellipse() {
  return Domain::difference(Domain::ellipse({0.0, 0.0}, 1.5, 1.0), Domain::disk({0.8, 0.0}, 0.5));
}

std::optional<Vec2> try_symmetric_point(const Domain& domain, Vec2 z) {
  const Projection p = domain.project(z);
  if (p.ambiguous) return std::nullopt;
  return 2.0 * p.point - z;
}

Vec2 symmetric_point(const Domain& domain, Vec2 z) {
  const Projection p = domain.project(z);
  if (p.ambiguous) throw AmbiguousProjection("projection onto the boundary is not unique");
  return 2.0 * p.point - z;
}

}  // namespace rbmd
