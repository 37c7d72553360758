#pragma once

#include <vector>

#include "rbmd/region.hpp"

namespace rbmd::detail {

/// Removes from the polygon bounded by `loops` the circular cap between each
/// boundary edge and the radius-r arc through its endpoints that bulges into
/// the region. Loops follow the Region2D orientation convention.
std::vector<Region2D::Loop> carve_caps(const std::vector<Region2D::Loop>& loops, double r);

}  // namespace rbmd::detail
