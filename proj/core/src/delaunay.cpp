#include "rbmd/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rbmd/predicates.hpp"

namespace rbmd {
namespace {

constexpr std::int64_t kNone = -1;

double pseudo_angle(double dx, double dy) {
  const double p = dx / (std::fabs(dx) + std::fabs(dy));
  return (dy > 0.0 ? 3.0 - p : 1.0 + p) / 4.0;
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 d = b - a, e = c - a;
  const double bl = norm2(d), cl = norm2(e);
  const double dd = 0.5 / (d.x * e.y - d.y * e.x);
  return {a.x + (e.y * bl - d.y * cl) * dd, a.y + (d.x * cl - e.x * bl) * dd};
}

class Builder {
 public:
  explicit Builder(std::span<const Vec2> pts) : pts_(pts) {}

  Triangulation run();

 private:
  std::size_t hash_key(Vec2 p) const {
    const double a = pseudo_angle(p.x - center_.x, p.y - center_.y);
    return static_cast<std::size_t>(std::floor(a * static_cast<double>(hash_size_))) % hash_size_;
  }
  // p strictly to the right of the counter-clockwise hull edge a -> b.
  bool visible(Vec2 p, std::uint32_t a, std::uint32_t b) const {
    return predicates::orient2d(pts_[a], pts_[b], p) < 0.0;
  }
  void link(std::int64_t a, std::int64_t b) {
    halfedges_[static_cast<std::size_t>(a)] = b;
    if (b != kNone) halfedges_[static_cast<std::size_t>(b)] = a;
  }
  std::size_t add_triangle(std::uint32_t i0, std::uint32_t i1, std::uint32_t i2, std::int64_t a, std::int64_t b,
                           std::int64_t c) {
    const std::size_t t = triangles_.size();
    triangles_.push_back(i0);
    triangles_.push_back(i1);
    triangles_.push_back(i2);
    halfedges_.resize(t + 3, kNone);
    link(static_cast<std::int64_t>(t), a);
    link(static_cast<std::int64_t>(t + 1), b);
    link(static_cast<std::int64_t>(t + 2), c);
    return t;
  }
  std::size_t legalize(std::size_t a);

  std::span<const Vec2> pts_;
  Vec2 center_;
  std::size_t hash_size_ = 1;
  std::vector<std::uint32_t> triangles_;
  std::vector<std::int64_t> halfedges_;
  std::vector<std::uint32_t> hull_prev_, hull_next_;
  std::vector<std::size_t> hull_tri_;
  std::vector<std::int64_t> hull_hash_;
  std::uint32_t hull_start_ = 0;
  std::vector<std::size_t> edge_stack_;
};

std::size_t Builder::legalize(std::size_t a) {
  std::size_t ar = 0;
  edge_stack_.clear();
  for (;;) {
    const std::int64_t b = halfedges_[a];
    const std::size_t a0 = a - a % 3;
    ar = a0 + (a + 2) % 3;
    if (b == kNone) {
      if (edge_stack_.empty()) break;
      a = edge_stack_.back();
      edge_stack_.pop_back();
      continue;
    }
    const auto bu = static_cast<std::size_t>(b);
    const std::size_t b0 = bu - bu % 3;
    const std::size_t al = a0 + (a + 1) % 3;
    const std::size_t bl = b0 + (bu + 2) % 3;

    const std::uint32_t p0 = triangles_[ar];
    const std::uint32_t pr = triangles_[a];
    const std::uint32_t pl = triangles_[al];
    const std::uint32_t p1 = triangles_[bl];

    // (p0, pr, pl) is the counter-clockwise triangle containing a.
    const bool illegal = predicates::incircle(pts_[p0], pts_[pr], pts_[pl], pts_[p1]) > 0.0;
    if (illegal) {
      triangles_[a] = p1;
      triangles_[bu] = p0;
      const std::int64_t hbl = halfedges_[bl];
      if (hbl == kNone) {
        // The flipped edge was on the hull; move the hull reference.
        std::uint32_t e = hull_start_;
        do {
          if (hull_tri_[e] == bl) {
            hull_tri_[e] = a;
            break;
          }
          e = hull_prev_[e];
        } while (e != hull_start_);
      }
      link(static_cast<std::int64_t>(a), hbl);
      link(b, halfedges_[ar]);
      link(static_cast<std::int64_t>(ar), static_cast<std::int64_t>(bl));
      edge_stack_.push_back(b0 + (bu + 1) % 3);
    } else {
      if (edge_stack_.empty()) break;
      a = edge_stack_.back();
      edge_stack_.pop_back();
    }
  }
  return ar;
}

Triangulation Builder::run() {
  Triangulation out;
  const std::size_t n = pts_.size();
  if (n < 3) {
    for (std::size_t i = 0; i < n; ++i) out.hull.push_back(static_cast<std::uint32_t>(i));
    return out;
  }
  const BBox box = bounding_box(pts_);
  const Vec2 c = box.center();

  std::uint32_t i0 = 0, i1 = 0, i2 = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d = norm2(pts_[i] - c);
    if (d < best) { i0 = i; best = d; }
  }
  best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i == i0) continue;
    const double d = norm2(pts_[i] - pts_[i0]);
    if (d < best && d > 0.0) { i1 = i; best = d; }
  }
  double min_radius = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i == i0 || i == i1) continue;
    const double r = circumradius2(pts_[i0], pts_[i1], pts_[i]);
    if (r < min_radius) { i2 = i; min_radius = r; }
  }
  if (!(min_radius < std::numeric_limits<double>::infinity())) {
    // Collinear (or fewer than three distinct points): report the sorted chain.
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    const Vec2 origin = pts_[0];
    std::vector<double> key(n);
    Vec2 dir{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) if (norm2(pts_[i] - origin) > norm2(dir)) dir = pts_[i] - origin;
    for (std::size_t i = 0; i < n; ++i) key[i] = dot(pts_[i] - origin, dir);
    std::stable_sort(ids.begin(), ids.end(), [&](auto a, auto b) { return key[a] < key[b]; });
    for (std::size_t k = 0; k < n; ++k) {
      if (k == 0 || !(pts_[ids[k]] == pts_[out.hull.back()])) out.hull.push_back(ids[k]);
    }
    return out;
  }
  if (predicates::orient2d(pts_[i0], pts_[i1], pts_[i2]) < 0.0) std::swap(i1, i2);
  center_ = circumcenter(pts_[i0], pts_[i1], pts_[i2]);

  std::vector<double> dists(n);
  for (std::size_t i = 0; i < n; ++i) dists[i] = norm2(pts_[i] - center_);
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  std::sort(ids.begin(), ids.end(), [&](auto a, auto b) { return dists[a] < dists[b] || (dists[a] == dists[b] && a < b); });

  hash_size_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  hull_prev_.assign(n, 0);
  hull_next_.assign(n, 0);
  hull_tri_.assign(n, 0);
  hull_hash_.assign(hash_size_, kNone);
  triangles_.reserve(6 * n);
  halfedges_.reserve(6 * n);

  hull_start_ = i0;
  hull_next_[i0] = i1; hull_prev_[i2] = i1;
  hull_next_[i1] = i2; hull_prev_[i0] = i2;
  hull_next_[i2] = i0; hull_prev_[i1] = i0;
  hull_tri_[i0] = 0; hull_tri_[i1] = 1; hull_tri_[i2] = 2;
  hull_hash_[hash_key(pts_[i0])] = i0;
  hull_hash_[hash_key(pts_[i1])] = i1;
  hull_hash_[hash_key(pts_[i2])] = i2;
  add_triangle(i0, i1, i2, kNone, kNone, kNone);

  Vec2 prev{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t i = ids[k];
    const Vec2 p = pts_[i];
    if (k > 0 && p == prev) continue;
    prev = p;
    if (i == i0 || i == i1 || i == i2) continue;
    if (p == pts_[i0] || p == pts_[i1] || p == pts_[i2]) continue;

    std::uint32_t start = 0;
    const std::size_t key = hash_key(p);
    for (std::size_t j = 0; j < hash_size_; ++j) {
      const std::int64_t s = hull_hash_[(key + j) % hash_size_];
      if (s != kNone && static_cast<std::uint32_t>(s) != hull_next_[static_cast<std::size_t>(s)]) {
        start = static_cast<std::uint32_t>(s);
        break;
      }
    }
    start = hull_prev_[start];
    std::uint32_t e = start;
    bool found = true;
    while (!visible(p, e, hull_next_[e])) {
      e = hull_next_[e];
      if (e == start) {
        found = false;
        break;
      }
    }
    if (!found) continue;  // on or inside the hull within rounding; skip

    std::size_t t = add_triangle(e, i, hull_next_[e], kNone, kNone, static_cast<std::int64_t>(hull_tri_[e]));
    hull_tri_[i] = legalize(t + 2);
    hull_tri_[e] = t;

    std::uint32_t nxt = hull_next_[e];
    for (;;) {
      const std::uint32_t q = hull_next_[nxt];
      if (!visible(p, nxt, q)) break;
      t = add_triangle(nxt, i, q, static_cast<std::int64_t>(hull_tri_[i]), kNone, static_cast<std::int64_t>(hull_tri_[nxt]));
      hull_tri_[i] = legalize(t + 2);
      hull_next_[nxt] = nxt;  // removed from the hull
      nxt = q;
    }
    if (e == start) {
      for (;;) {
        const std::uint32_t q = hull_prev_[e];
        if (!visible(p, q, e)) break;
        t = add_triangle(q, i, e, kNone, static_cast<std::int64_t>(hull_tri_[e]), static_cast<std::int64_t>(hull_tri_[q]));
        legalize(t + 2);
        hull_tri_[q] = t;
        hull_next_[e] = e;
        e = q;
      }
    }
    hull_start_ = e;
    hull_prev_[i] = e;
    hull_next_[e] = i;
    hull_prev_[nxt] = i;
    hull_next_[i] = nxt;
    hull_hash_[hash_key(p)] = i;
    hull_hash_[hash_key(pts_[e])] = e;
  }

  std::uint32_t e = hull_start_;
  do {
    out.hull.push_back(e);
    e = hull_next_[e];
  } while (e != hull_start_);
  out.triangles = std::move(triangles_);
  out.halfedges = std::move(halfedges_);
  return out;
}

}  // namespace

double circumradius2(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 d = b - a, e = c - a;
  const double bl = norm2(d), cl = norm2(e);
  const double det = d.x * e.y - d.y * e.x;
  if (det == 0.0) return std::numeric_limits<double>::infinity();
  const double dd = 0.5 / det;
  const double x = (e.y * bl - d.y * cl) * dd;
  const double y = (d.x * cl - e.x * bl) * dd;
  const double r = x * x + y * y;
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

Triangulation delaunay(std::span<const Vec2> points) { return Builder(points).run(); }

}  // namespace rbmd
