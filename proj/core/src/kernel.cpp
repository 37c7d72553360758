#include "rbmd/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rbmd/errors.hpp"

namespace rbmd {

Kernel Kernel::gaussian() { return Kernel(KernelType::Gaussian); }
Kernel Kernel::epanechnikov() { return Kernel(KernelType::Epanechnikov); }

Kernel Kernel::by_name(const std::string& name) {
  if (name == "gaussian") return gaussian();
  if (name == "epanechnikov") return epanechnikov();
  throw ConfigError("unknown kernel: " + name);
}

double Kernel::radial(double r) const {
  if (type_ == KernelType::Gaussian) return std::exp(-0.5 * r * r) / (2.0 * std::numbers::pi);
  return r <= 1.0 ? (2.0 / std::numbers::pi) * (1.0 - r * r) : 0.0;
}

Kernel::Kernel(KernelType t) : type_(t) {
  name_ = t == KernelType::Gaussian ? "gaussian" : "epanechnikov";
  support_ = t == KernelType::Gaussian ? std::numeric_limits<double>::infinity() : 1.0;
  k1_ = radial(0.0);

  // Radial Simpson rule for kappa = int_0^R 2 pi r^2 K(r) dr; the gaussian
  // tail beyond r = 12 is below 1e-30.
  const double R = t == KernelType::Gaussian ? 12.0 : 1.0;
  const int n = 20000;
  const double step = R / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * step;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * 2.0 * std::numbers::pi * r * r * radial(r);
  }
  kappa_ = s * step / 3.0;

  // Largest radial slope on a fine grid.
  double lip = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r0 = i * step, r1 = r0 + step;
    if (r1 > support_) break;
    lip = std::max(lip, std::fabs(radial(r1) - radial(r0)) / step);
  }
  lipschitz_ = lip;
}

double Kernel::value(Vec2 u) const { return radial(std::sqrt(norm2(u))); }

Vec2 Kernel::gradient(Vec2 u) const {
  const double r2 = norm2(u);
  if (type_ == KernelType::Gaussian) return (-std::exp(-0.5 * r2) / (2.0 * std::numbers::pi)) * u;
  if (r2 > 1.0) return {0.0, 0.0};
  return (-4.0 / std::numbers::pi) * u;
}

}  // namespace rbmd
