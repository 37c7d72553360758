#pragma once

#include "rbmd/types.hpp"

namespace rbmd::predicates {

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
/// The sign is exact: a floating-point filter falls back to an error-free
/// expansion when the fast result is not certified.
double orient2d(Vec2 a, Vec2 b, Vec2 c);

/// Positive when d lies strictly inside the circumcircle of the
/// counter-clockwise triangle (a, b, c). Filtered, with an extended-precision
/// fallback.
double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace rbmd::predicates
