#pragma once

#include "mazeplan/geometry.hpp"

namespace mazeplan {

// Sum of consecutive waypoint distances; 0 for a single waypoint.
double path_length(const Path& path);

// Mean absolute heading change at interior waypoints, radians in [0, pi].
// Zero-length segments are skipped; paths with < 3 waypoints score 0.
double smoothness(const Path& path);

}  // namespace mazeplan
