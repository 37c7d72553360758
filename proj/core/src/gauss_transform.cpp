#include <array>
#include <cmath>
#include <numbers>

#include "kde_engine.hpp"

namespace rbmd::detail {
namespace {

// Terms per axis of the Hermite expansion. Sources sit within half a box
// (rho = 1/2 in units of s) of their box centre, so the truncated tail is
// bounded by (rho sqrt 2)^P / sqrt(P!) ~ 6e-13 of the box mass.
constexpr int P = 20;
// Boxes with fewer samples are summed directly.
constexpr std::size_t kDirectBelow = 16;
// Samples beyond this many bandwidths are ignored: exp(-32) ~ 1.3e-14.
constexpr double kCutoff = 8.0;
constexpr int kMaxReach = 8;

// Hermite functions h_n(t) = (-1)^n d^n/dt^n exp(-t^2), n = 0..count-1.
inline void hermite(double t, double* out, int count) {
  out[0] = std::exp(-t * t);
  if (count > 1) out[1] = 2.0 * t * out[0];
  for (int n = 1; n + 1 < count; ++n) out[n + 1] = 2.0 * t * out[n] - 2.0 * n * out[n - 1];
}

class GaussTransform final : public KdeEngine {
 public:
  GaussTransform(std::span<const Vec2> samples, double h)
      : s_(std::numbers::sqrt2 * h),
        bins_(samples, s_),
        cutoff2_((kCutoff * h) * (kCutoff * h)),
        norm_(1.0 / (static_cast<double>(samples.size()) * std::numbers::pi * s_ * s_)) {
    reach_ = static_cast<std::int64_t>(std::ceil(kCutoff * h / s_)) + 1;
    offset_.assign(bins_.count(), -1);
    const double inv_s = 1.0 / s_;
    for (std::size_t b = 0; b < bins_.count(); ++b) {
      const auto pts = bins_.points(b);
      if (pts.size() < kDirectBelow) continue;
      offset_[b] = static_cast<std::int64_t>(moments_.size());
      moments_.resize(moments_.size() + P * P, 0.0);
      double* A = moments_.data() + offset_[b];
      const Vec2 c = centre(bins_.bin_col(b), bins_.bin_row(b));
      for (Vec2 p : pts) {
        const Vec2 u = inv_s * (p - c);
        double pa[P], pb[P];
        pa[0] = pb[0] = 1.0;
        for (int a = 1; a < P; ++a) {
          pa[a] = pa[a - 1] * u.x / a;
          pb[a] = pb[a - 1] * u.y / a;
        }
        for (int a = 0; a < P; ++a) {
          for (int b2 = 0; b2 < P; ++b2) A[a * P + b2] += pa[a] * pb[b2];
        }
      }
    }
  }

  double value(Vec2 x) const override {
    double v = 0.0;
    Vec2 g;
    accumulate<false>(x, v, g);
    return norm_ * v;
  }

  Vec2 gradient(Vec2 x) const override {
    double v = 0.0;
    Vec2 g{0.0, 0.0};
    accumulate<true>(x, v, g);
    return norm_ * g;
  }

 private:
  Vec2 centre(std::int64_t i, std::int64_t j) const {
    return {(static_cast<double>(i) + 0.5) * s_, (static_cast<double>(j) + 0.5) * s_};
  }

  template <bool Grad>
  void accumulate(Vec2 x, double& v, Vec2& g) const {
    const Vec2 xr = x - bins_.origin();
    const std::int64_t ci = bins_.col(xr.x), cj = bins_.row(xr.y);
    const std::int64_t reach = std::min<std::int64_t>(reach_, kMaxReach);
    const double inv_s = 1.0 / s_;
    const double inv_s2 = inv_s * inv_s;
    const double half = 0.5 * s_;

    // Hermite values per column and row, filled on first use.
    std::array<std::array<double, P + 1>, 2 * kMaxReach + 1> hx, hy;
    std::array<bool, 2 * kMaxReach + 1> have_x{}, have_y{};

    for (std::int64_t j = cj - reach; j <= cj + reach; ++j) {
      if (j < 0 || j >= bins_.ny()) continue;
      const double cy = (static_cast<double>(j) + 0.5) * s_;
      const double gy = std::max(0.0, std::fabs(xr.y - cy) - half);
      if (gy * gy > cutoff2_) continue;
      for (std::int64_t i = ci - reach; i <= ci + reach; ++i) {
        if (i < 0 || i >= bins_.nx()) continue;
        const double cx = (static_cast<double>(i) + 0.5) * s_;
        const double gx = std::max(0.0, std::fabs(xr.x - cx) - half);
        if (gx * gx + gy * gy > cutoff2_) continue;
        const std::int64_t b = bins_.find(i, j);
        if (b < 0) continue;
        const std::int64_t off = offset_[static_cast<std::size_t>(b)];
        if (off < 0) {
          for (Vec2 p : bins_.points(static_cast<std::size_t>(b))) {
            const Vec2 d = xr - p;
            const double e = std::exp(-norm2(d) * inv_s2);
            v += e;
            if constexpr (Grad) g -= (2.0 * inv_s2 * e) * d;
          }
          continue;
        }
        const auto ki = static_cast<std::size_t>(i - ci + reach);
        const auto kj = static_cast<std::size_t>(j - cj + reach);
        if (!have_x[ki]) {
          hermite((xr.x - cx) * inv_s, hx[ki].data(), P + 1);
          have_x[ki] = true;
        }
        if (!have_y[kj]) {
          hermite((xr.y - cy) * inv_s, hy[kj].data(), P + 1);
          have_y[kj] = true;
        }
        const double* A = moments_.data() + off;
        const double* Hx = hx[ki].data();
        const double* Hy = hy[kj].data();
        double t0[P] = {}, t1[P] = {};
        for (int a = 0; a < P; ++a) {
          const double wa = Hx[a];
          const double* row = A + a * P;
          for (int c = 0; c < P; ++c) t0[c] += wa * row[c];
          if constexpr (Grad) {
            const double wg = Hx[a + 1];
            for (int c = 0; c < P; ++c) t1[c] += wg * row[c];
          }
        }
        double sv = 0.0;
        for (int c = 0; c < P; ++c) sv += t0[c] * Hy[c];
        v += sv;
        if constexpr (Grad) {
          // d/dt h_n(t) = -h_{n+1}(t)
          double sx = 0.0, sy = 0.0;
          for (int c = 0; c < P; ++c) {
            sx += t1[c] * Hy[c];
            sy += t0[c] * Hy[c + 1];
          }
          g.x -= inv_s * sx;
          g.y -= inv_s * sy;
        }
      }
    }
  }

  double s_;
  Bins bins_;
  double cutoff2_;
  double norm_;
  std::int64_t reach_ = 1;
  std::vector<std::int64_t> offset_;
  std::vector<double> moments_;
};

}  // namespace

std::unique_ptr<KdeEngine> make_gauss_transform(std::span<const Vec2> samples, double h) {
  return std::make_unique<GaussTransform>(samples, h);
}

}  // namespace rbmd::detail
