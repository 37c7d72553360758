#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "rbmd/kernel.hpp"
#include "rbmd/types.hpp"

namespace rbmd::detail {

class KdeEngine {
 public:
  virtual ~KdeEngine() = default;
  virtual double value(Vec2 x) const = 0;
  virtual Vec2 gradient(Vec2 x) const = 0;
};

/// Samples bucketed on a square lattice anchored at the lower-left corner of
/// their bounding box. Coordinates are kept relative to that corner.
class Bins {
 public:
  Bins(std::span<const Vec2> samples, double cell);

  Vec2 origin() const { return origin_; }
  double cell() const { return cell_; }
  std::int64_t nx() const { return nx_; }
  std::int64_t ny() const { return ny_; }
  std::int64_t col(double xr) const;
  std::int64_t row(double yr) const;
  /// Index of the occupied bin (i, j) in [0, count()), or -1.
  std::int64_t find(std::int64_t i, std::int64_t j) const;

  std::size_t count() const { return bin_i_.size(); }
  std::int64_t bin_col(std::size_t b) const { return bin_i_[b]; }
  std::int64_t bin_row(std::size_t b) const { return bin_j_[b]; }
  std::span<const Vec2> points(std::size_t b) const {
    return {rel_.data() + start_[b], start_[b + 1] - start_[b]};
  }

 private:
  Vec2 origin_;
  double cell_;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<Vec2> rel_;
  std::vector<std::size_t> start_;
  std::vector<std::int64_t> bin_i_, bin_j_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

std::unique_ptr<KdeEngine> make_gauss_transform(std::span<const Vec2> samples, double h);
std::unique_ptr<KdeEngine> make_epanechnikov_sum(std::span<const Vec2> samples, double h);

}  // namespace rbmd::detail
