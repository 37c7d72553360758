#include "rbmd/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kde_engine.hpp"
#include "rbmd/errors.hpp"

namespace rbmd {
namespace detail {

Bins::Bins(std::span<const Vec2> samples, double cell) : cell_(cell) {
  const BBox box = bounding_box(samples);
  origin_ = box.lo;
  const double fx = std::floor(box.width() / cell_) + 1.0;
  const double fy = std::floor(box.height() / cell_) + 1.0;
  if (!(fx * fy < 4e18)) throw DegenerateInput("bandwidth too small for the sample extent");
  nx_ = static_cast<std::int64_t>(fx);
  ny_ = static_cast<std::int64_t>(fy);

  const std::size_t n = samples.size();
  std::vector<std::uint64_t> key(n);
  rel_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rel_[k] = samples[k] - origin_;
    const std::int64_t i = std::clamp<std::int64_t>(col(rel_[k].x), 0, nx_ - 1);
    const std::int64_t j = std::clamp<std::int64_t>(row(rel_[k].y), 0, ny_ - 1);
    key[k] = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(nx_) + static_cast<std::uint64_t>(i);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<Vec2> sorted(n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted[k] = rel_[order[k]];
    if (k == 0 || key[order[k]] != key[order[k - 1]]) {
      start_.push_back(k);
      bin_i_.push_back(static_cast<std::int64_t>(key[order[k]] % static_cast<std::uint64_t>(nx_)));
      bin_j_.push_back(static_cast<std::int64_t>(key[order[k]] / static_cast<std::uint64_t>(nx_)));
    }
  }
  start_.push_back(n);
  rel_ = std::move(sorted);

  const double cells = fx * fy;
  if (cells <= std::max(8.0 * static_cast<double>(n), 1048576.0)) {
    dense_.assign(static_cast<std::size_t>(cells), -1);
    for (std::size_t b = 0; b < bin_i_.size(); ++b) {
      dense_[static_cast<std::size_t>(bin_j_[b] * nx_ + bin_i_[b])] = static_cast<std::int32_t>(b);
    }
  } else {
    for (std::size_t b = 0; b < bin_i_.size(); ++b) {
      sparse_.emplace(static_cast<std::uint64_t>(bin_j_[b] * nx_ + bin_i_[b]), static_cast<std::int32_t>(b));
    }
  }
}

std::int64_t Bins::col(double xr) const { return static_cast<std::int64_t>(std::floor(xr / cell_)); }
std::int64_t Bins::row(double yr) const { return static_cast<std::int64_t>(std::floor(yr / cell_)); }

std::int64_t Bins::find(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
  const auto flat = static_cast<std::uint64_t>(j * nx_ + i);
  if (!dense_.empty()) return dense_[flat];
  auto it = sparse_.find(flat);
  return it == sparse_.end() ? -1 : it->second;
}

namespace {

class EpanechnikovSum final : public KdeEngine {
 public:
  EpanechnikovSum(std::span<const Vec2> samples, double h)
      : bins_(samples, h * (1.0 + 1e-6)), h_(h), norm_(2.0 / (std::numbers::pi * static_cast<double>(samples.size()) * h * h)) {}

  double value(Vec2 x) const override {
    const Vec2 xr = x - bins_.origin();
    const std::int64_t ci = bins_.col(xr.x), cj = bins_.row(xr.y);
    const double inv_h2 = 1.0 / (h_ * h_);
    double s = 0.0;
    for (std::int64_t j = cj - 1; j <= cj + 1; ++j) {
      for (std::int64_t i = ci - 1; i <= ci + 1; ++i) {
        const std::int64_t b = bins_.find(i, j);
        if (b < 0) continue;
        for (Vec2 p : bins_.points(static_cast<std::size_t>(b))) {
          const double r2 = norm2(xr - p) * inv_h2;
          if (r2 < 1.0) s += 1.0 - r2;
        }
      }
    }
    return norm_ * s;
  }

  Vec2 gradient(Vec2 x) const override {
    const Vec2 xr = x - bins_.origin();
    const std::int64_t ci = bins_.col(xr.x), cj = bins_.row(xr.y);
    Vec2 g{0.0, 0.0};
    for (std::int64_t j = cj - 1; j <= cj + 1; ++j) {
      for (std::int64_t i = ci - 1; i <= ci + 1; ++i) {
        const std::int64_t b = bins_.find(i, j);
        if (b < 0) continue;
        for (Vec2 p : bins_.points(static_cast<std::size_t>(b))) {
          const Vec2 d = xr - p;
          const double r = std::sqrt(norm2(d)) / h_;
          if (std::fabs(r - 1.0) <= 1e-8) throw NonDifferentiablePoint("point lies on a kernel support circle");
          if (r < 1.0) g -= d;
        }
      }
    }
    // d/dx (1 - |x - X|^2 / h^2) = -2 (x - X) / h^2
    return (2.0 * norm_ / (h_ * h_)) * g;
  }

 private:
  Bins bins_;
  double h_;
  double norm_;
};

}  // namespace

std::unique_ptr<KdeEngine> make_epanechnikov_sum(std::span<const Vec2> samples, double h) {
  return std::make_unique<EpanechnikovSum>(samples, h);
}

}  // namespace detail

DensityEstimate::DensityEstimate(std::vector<Vec2> samples, Kernel kernel, double h, std::optional<Region2D> mask)
    : kernel_(std::move(kernel)), h_(h), mask_(std::move(mask)) {
  if (samples.empty()) throw DegenerateInput("density estimate needs at least one sample");
  if (!(h > 0.0) || !std::isfinite(h)) throw DegenerateInput("bandwidth must be positive and finite");
  for (Vec2 p : samples) {
    if (!is_finite(p)) throw DegenerateInput("non-finite sample point");
  }
  samples_ = std::make_shared<const std::vector<Vec2>>(std::move(samples));
  if (kernel_.type() == KernelType::Gaussian) {
    engine_ = detail::make_gauss_transform(*samples_, h_);
  } else {
    engine_ = detail::make_epanechnikov_sum(*samples_, h_);
  }
}

double DensityEstimate::evaluate(Vec2 x) const {
  if (mask_ && !mask_->contains(x)) return 0.0;
  return engine_->value(x);
}

Vec2 DensityEstimate::gradient(Vec2 x) const {
  if (mask_ && !mask_->contains(x)) return {0.0, 0.0};
  return engine_->gradient(x);
}

std::vector<double> DensityEstimate::evaluate_many(std::span<const Vec2> xs) const {
  std::vector<double> out(xs.size());
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = evaluate(xs[static_cast<std::size_t>(k)]);
  return out;
}

DensityEstimate DensityEstimate::with_mask(std::optional<Region2D> mask) const {
  DensityEstimate e = *this;
  e.mask_ = std::move(mask);
  return e;
}

double evaluate_density(const DensityEstimate& estimate, Vec2 x) { return estimate.evaluate(x); }
Vec2 gradient_density(const DensityEstimate& estimate, Vec2 x) { return estimate.gradient(x); }

BandwidthMode bandwidth_mode_from_string(const std::string& s) {
  if (s == "rate_optimal") return BandwidthMode::RateOptimal;
  if (s == "uniform_consistency") return BandwidthMode::UniformConsistency;
  throw ConfigError("unknown bandwidth mode: " + s);
}

std::string to_string(BandwidthMode m) {
  return m == BandwidthMode::RateOptimal ? "rate_optimal" : "uniform_consistency";
}

double default_bandwidth(std::size_t n, int d, BandwidthMode mode, double c_h) {
  if (n < 2) throw DegenerateInput("bandwidth rule needs n >= 2");
  if (d < 1) throw DegenerateInput("dimension must be positive");
  if (!(c_h > 0.0)) throw ConfigError("bandwidth prefactor must be positive");
  const double e = mode == BandwidthMode::RateOptimal ? 1.0 / (d + 2) : 1.0 / (d + 1);
  return c_h * std::pow(static_cast<double>(n), -e);
}

ScalarField evaluate_on_grid(const DensityEstimate& estimate, const Grid2D& grid) {
  ScalarField f{grid, std::vector<double>(grid.size())};
  const auto ny = static_cast<std::int64_t>(grid.ny);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      f.values[static_cast<std::size_t>(j) * grid.nx + i] = estimate.evaluate(grid.node(i, static_cast<std::size_t>(j)));
    }
  }
  return f;
}

}  // namespace rbmd
