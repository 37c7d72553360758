#pragma once

#include <string>

#include "rbmd/types.hpp"

namespace rbmd {

enum class KernelType { Gaussian, Epanechnikov };

/// Radially symmetric probability kernel on the plane.
///
/// gaussian:      K(u) = exp(-|u|^2 / 2) / (2 pi)
/// epanechnikov:  K(u) = (2 / pi) (1 - |u|^2) on |u| <= 1
///
/// k1 (sup), the Lipschitz constant and the first absolute moment
/// kappa = int |u| K(u) du are computed numerically at construction.
class Kernel {
 public:
  static Kernel gaussian();
  static Kernel epanechnikov();
  /// "gaussian" or "epanechnikov"; throws ConfigError otherwise.
  static Kernel by_name(const std::string& name);

  KernelType type() const { return type_; }
  const std::string& name() const { return name_; }
  double value(Vec2 u) const;
  Vec2 gradient(Vec2 u) const;

  double k1() const { return k1_; }
  double lipschitz() const { return lipschitz_; }
  double kappa() const { return kappa_; }
  /// Infinity for the gaussian.
  double support_radius() const { return support_; }

 private:
  explicit Kernel(KernelType t);
  double radial(double r) const;

  KernelType type_;
  std::string name_;
  double k1_ = 0.0;
  double lipschitz_ = 0.0;
  double kappa_ = 0.0;
  double support_ = 0.0;
};

}  // namespace rbmd
