#include "rbmd/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace rbmd {

Grid2D::Grid2D(BBox b, std::size_t nx_, std::size_t ny_) : box(b), nx(nx_), ny(ny_) {}

double Grid2D::x(std::size_t i) const {
  if (nx == 1) return box.center().x;
  if (i + 1 == nx) return box.hi.x;
  return box.lo.x + static_cast<double>(i) * dx();
}

double Grid2D::y(std::size_t j) const {
  if (ny == 1) return box.center().y;
  if (j + 1 == ny) return box.hi.y;
  return box.lo.y + static_cast<double>(j) * dy();
}

double ScalarField::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  return m;
}

namespace {

struct Crossing {
  std::uint64_t from;
  std::uint64_t to;
  Vec2 point;  // position of `from`
};

}  // namespace

Region2D contour_region(const ScalarField& field, double level) {
  const Grid2D& g = field.grid;
  // Padded lattice: node (I, J) is grid node (I-1, J-1).
  const std::size_t NX = g.nx + 2, NY = g.ny + 2;
  const double px = g.nx > 1 ? g.dx() : 1.0;
  const double py = g.ny > 1 ? g.dy() : 1.0;

  auto inner = [&](std::size_t I, std::size_t J) {
    return I >= 1 && J >= 1 && I <= g.nx && J <= g.ny;
  };
  auto value = [&](std::size_t I, std::size_t J) {
    return inner(I, J) ? field.at(I - 1, J - 1) : -std::numeric_limits<double>::infinity();
  };
  auto pos = [&](std::size_t I, std::size_t J) -> Vec2 {
    const double x = I == 0 ? g.x(0) - px : I == NX - 1 ? g.x(g.nx - 1) + px : g.x(I - 1);
    const double y = J == 0 ? g.y(0) - py : J == NY - 1 ? g.y(g.ny - 1) + py : g.y(J - 1);
    return {x, y};
  };
  auto above = [&](std::size_t I, std::size_t J) { return value(I, J) > level; };
  // Edge ids: horizontal edge starting at (I, J) is 2k, vertical is 2k + 1.
  auto hedge = [&](std::size_t I, std::size_t J) { return 2 * (static_cast<std::uint64_t>(J) * NX + I); };
  auto vedge = [&](std::size_t I, std::size_t J) { return 2 * (static_cast<std::uint64_t>(J) * NX + I) + 1; };
  auto crossing = [&](std::size_t Ia, std::size_t Ja, std::size_t Ib, std::size_t Jb) -> Vec2 {
    const Vec2 a = pos(Ia, Ja), b = pos(Ib, Jb);
    double t = 0.5;
    if (inner(Ia, Ja) && inner(Ib, Jb)) {
      const double va = value(Ia, Ja), vb = value(Ib, Jb);
      t = (level - va) / (vb - va);
    }
    return a + t * (b - a);
  };

  std::vector<Crossing> segs;
  for (std::size_t J = 0; J + 1 < NY; ++J) {
    for (std::size_t I = 0; I + 1 < NX; ++I) {
      const std::size_t ci[4] = {I, I + 1, I + 1, I};
      const std::size_t cj[4] = {J, J, J + 1, J + 1};
      bool up[4];
      int count = 0;
      for (int k = 0; k < 4; ++k) count += (up[k] = above(ci[k], cj[k]));
      if (count == 0 || count == 4) continue;
      // Counter-clockwise walk: bottom, right, top, left.
      const std::uint64_t ids[4] = {hedge(I, J), vedge(I + 1, J), hedge(I, J + 1), vedge(I, J)};
      int leave[2], enter[2], nl = 0, ne = 0;
      for (int k = 0; k < 4; ++k) {
        const bool a = up[k], b = up[(k + 1) % 4];
        if (a && !b) leave[nl++] = k;
        if (!a && b) enter[ne++] = k;
      }
      auto point_of = [&](int k) {
        const int k2 = (k + 1) % 4;
        // Canonical direction keeps shared edges bit-identical in both cells.
        if (k >= 2) return crossing(ci[k2], cj[k2], ci[k], cj[k]);
        return crossing(ci[k], cj[k], ci[k2], cj[k2]);
      };
      if (nl == 1) {
        segs.push_back({ids[leave[0]], ids[enter[0]], point_of(leave[0])});
        continue;
      }
      double centre = 0.0;
      bool padded = false;
      for (int k = 0; k < 4; ++k) {
        if (!inner(ci[k], cj[k])) padded = true;
        else centre += value(ci[k], cj[k]);
      }
      const bool connected = !padded && 0.25 * centre > level;
      for (int a = 0; a < 2; ++a) {
        const int l = leave[a];
        int best = -1;
        for (int b = 0; b < 2; ++b) {
          const int e = enter[b];
          if (best < 0) {
            best = e;
            continue;
          }
          const int d_new = connected ? (e - l + 4) % 4 : (l - e + 4) % 4;
          const int d_old = connected ? (best - l + 4) % 4 : (l - best + 4) % 4;
          if (d_new < d_old) best = e;
        }
        segs.push_back({ids[l], ids[best], point_of(l)});
      }
    }
  }

  std::sort(segs.begin(), segs.end(), [](const Crossing& a, const Crossing& b) { return a.from < b.from; });
  auto find = [&](std::uint64_t id) {
    auto it = std::lower_bound(segs.begin(), segs.end(), id, [](const Crossing& c, std::uint64_t v) { return c.from < v; });
    return static_cast<std::size_t>(it - segs.begin());
  };
  std::vector<bool> used(segs.size(), false);
  std::vector<Region2D::Loop> loops;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    Region2D::Loop loop;
    std::size_t k = s;
    while (!used[k]) {
      used[k] = true;
      if (loop.empty() || !(loop.back() == segs[k].point)) loop.push_back(segs[k].point);
      k = find(segs[k].to);
    }
    while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
    if (loop.size() >= 3 && signed_area(loop) != 0.0) loops.push_back(std::move(loop));
  }
  nlohmann::json meta{{"kind", "grid_contour"}, {"level", level}, {"pitch", {g.dx(), g.dy()}},
                      {"shape", {g.nx, g.ny}}};
  return Region2D(std::move(loops), {}, {}, std::move(meta));
}

}  // namespace rbmd
