#include "rbmd/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rbmd/errors.hpp"

namespace rbmd {

double signed_area(const Region2D::Loop& loop) {
  double a = 0.0;
  for (std::size_t i = 0, n = loop.size(); i < n; ++i) a += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * a;
}

// Horizontal slabs over the bounding box. Each primitive is listed in every
// slab its (tolerance-inflated) y-range touches; loop edges take part in the
// even-odd crossing count, zero-area parts only in the proximity test.
struct Region2D::Index {
  struct Item {
    Segment seg;
    bool parity;
  };
  double y0 = 0.0;
  double slab = 1.0;
  std::size_t nslabs = 1;
  std::vector<Item> items;
  std::vector<std::uint32_t> refs;
  std::vector<std::size_t> start;
  SegmentIndex nearest;

  std::size_t slab_of(double y) const {
    const double s = std::floor((y - y0) / slab);
    if (s < 0.0) return 0;
    return std::min(nslabs - 1, static_cast<std::size_t>(s));
  }
};

Region2D::Region2D(std::vector<Loop> loops, std::vector<Vec2> points, std::vector<Segment> segments,
                   nlohmann::json meta)
    : loops_(std::move(loops)), points_(std::move(points)), segments_(std::move(segments)), meta_(std::move(meta)) {
  std::erase_if(loops_, [](const Loop& l) { return l.size() < 3; });
  holes_.reserve(loops_.size());
  for (const auto& l : loops_) holes_.push_back(signed_area(l) < 0.0);

  double max_abs = 0.0;
  auto take = [&](Vec2 p) {
    bbox_.expand(p);
    max_abs = std::max({max_abs, std::fabs(p.x), std::fabs(p.y)});
  };
  for (const auto& l : loops_) for (Vec2 p : l) take(p);
  for (Vec2 p : points_) take(p);
  for (const auto& s : segments_) {
    take(s.a);
    take(s.b);
  }
  tol_ = 1e-9 * std::max({bbox_.diagonal(), max_abs, 1e-300});
  if (empty()) return;

  auto idx = std::make_shared<Index>();
  std::vector<Segment> all;
  for (const auto& l : loops_) {
    for (std::size_t i = 0, n = l.size(); i < n; ++i) idx->items.push_back({{l[i], l[(i + 1) % n]}, true});
  }
  for (const auto& s : segments_) idx->items.push_back({s, false});
  for (Vec2 p : points_) idx->items.push_back({{p, p}, false});
  for (const auto& it : idx->items) all.push_back(it.seg);

  idx->y0 = bbox_.lo.y - tol_;
  const double height = bbox_.height() + 2.0 * tol_;
  idx->nslabs = std::clamp<std::size_t>(idx->items.size() / 2, 1, 65536);
  idx->slab = height > 0.0 ? height / static_cast<double>(idx->nslabs) : 1.0;
  idx->start.assign(idx->nslabs + 1, 0);
  auto range = [&](const Segment& s) {
    const std::size_t a = idx->slab_of(std::min(s.a.y, s.b.y) - tol_);
    const std::size_t b = idx->slab_of(std::max(s.a.y, s.b.y) + tol_);
    return std::pair{a, b};
  };
  for (const auto& it : idx->items) {
    const auto [a, b] = range(it.seg);
    for (std::size_t k = a; k <= b; ++k) ++idx->start[k + 1];
  }
  for (std::size_t k = 0; k < idx->nslabs; ++k) idx->start[k + 1] += idx->start[k];
  idx->refs.resize(idx->start.back());
  std::vector<std::size_t> fill(idx->start.begin(), idx->start.end() - 1);
  for (std::size_t n = 0; n < idx->items.size(); ++n) {
    const auto [a, b] = range(idx->items[n].seg);
    for (std::size_t k = a; k <= b; ++k) idx->refs[fill[k]++] = static_cast<std::uint32_t>(n);
  }
  idx->nearest = SegmentIndex(std::move(all));
  index_ = std::move(idx);
}

bool Region2D::contains(Vec2 p) const {
  if (!index_) return false;
  if (!bbox_.inflated(tol_).contains(p)) return false;
  const Index& idx = *index_;
  const std::size_t k = idx.slab_of(p.y);
  bool inside = false;
  for (std::size_t r = idx.start[k]; r < idx.start[k + 1]; ++r) {
    const auto& it = idx.items[idx.refs[r]];
    const Vec2 a = it.seg.a, b = it.seg.b;
    if (p.x >= std::min(a.x, b.x) - tol_ && p.x <= std::max(a.x, b.x) + tol_ &&
        point_segment_distance(p, it.seg) <= tol_) {
      return true;
    }
    if (!it.parity) continue;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double Region2D::distance(Vec2 p) const {
  if (!index_) return std::numeric_limits<double>::infinity();
  if (contains(p)) return 0.0;
  return index_->nearest.distance(p);
}

double Region2D::area() const {
  double a = 0.0;
  for (const auto& l : loops_) a += signed_area(l);
  return a;
}

double Region2D::perimeter() const {
  double p = 0.0;
  for (const auto& l : loops_) {
    for (std::size_t i = 0, n = l.size(); i < n; ++i) p += rbmd::distance(l[i], l[(i + 1) % n]);
  }
  return p;
}

Region2D Region2D::with_meta(nlohmann::json meta) const {
  Region2D r = *this;
  r.meta_ = std::move(meta);
  return r;
}

nlohmann::json Region2D::to_json() const {
  nlohmann::json loops = nlohmann::json::array();
  for (const auto& l : loops_) {
    nlohmann::json jl = nlohmann::json::array();
    for (Vec2 p : l) jl.push_back({p.x, p.y});
    loops.push_back(std::move(jl));
  }
  nlohmann::json j{{"loops", std::move(loops)}, {"holes", holes_}, {"meta", meta_}};
  if (!points_.empty()) {
    nlohmann::json pts = nlohmann::json::array();
    for (Vec2 p : points_) pts.push_back({p.x, p.y});
    j["points"] = std::move(pts);
  }
  if (!segments_.empty()) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : segments_) segs.push_back({{s.a.x, s.a.y}, {s.b.x, s.b.y}});
    j["segments"] = std::move(segs);
  }
  return j;
}

Region2D Region2D::from_json(const nlohmann::json& j) {
  try {
    auto pt = [](const nlohmann::json& a) { return Vec2{a.at(0).get<double>(), a.at(1).get<double>()}; };
    std::vector<Loop> loops;
    for (const auto& jl : j.at("loops")) {
      Loop l;
      for (const auto& p : jl) l.push_back(pt(p));
      loops.push_back(std::move(l));
    }
    std::vector<Vec2> points;
    if (j.contains("points")) for (const auto& p : j.at("points")) points.push_back(pt(p));
    std::vector<Segment> segs;
    if (j.contains("segments")) for (const auto& s : j.at("segments")) segs.push_back({pt(s.at(0)), pt(s.at(1))});
    return Region2D(std::move(loops), std::move(points), std::move(segs), j.value("meta", nlohmann::json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("region JSON: ") + e.what());
  }
}

}  // namespace rbmd
