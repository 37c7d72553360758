#pragma once

#include "rbmd/grid.hpp"
#include "rbmd/region.hpp"

namespace rbmd {

/// Marching-squares extraction of {field > level} as a Region2D.
///
/// Crossings are placed by linear interpolation along cell edges. The grid is
/// padded with one ring of nodes below every level, so loops always close; a
/// pad edge crossing sits half a pitch outside the grid. Saddle cells are
/// resolved by the cell-centre average. Nodes equal to the level count as
/// below. Loops are counter-clockwise around superlevel components and
/// clockwise around holes.
Region2D contour_region(const ScalarField& field, double level);

}  // namespace rbmd
