#pragma once

#include <vector>

#include "mazeplan/geometry.hpp"
#include "mazeplan/occupancy_grid.hpp"

namespace mazeplan {

// Per-cell signed Euclidean distance to the obstacle boundary, meters.
// Positive in free space (distance to nearest obstacle cell center),
// negative inside obstacles (distance to nearest free cell center).
// Immutable after construction; safe to share across threads.
class SignedDistanceField {
 public:
  SignedDistanceField(int width, int height, double resolution, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

  double value_at(int ix, int iy) const {
    return values_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(ix)];
  }

  const std::vector<double>& values() const { return values_; }

 private:
  int width_;
  int height_;
  double resolution_;
  std::vector<double> values_;
};

// Exact Euclidean distance transform (two-pass lower-envelope method),
// parallelized across rows/columns with OpenMP when available.
SignedDistanceField build_sdf(const OccupancyGrid& grid);

// Single-threaded reference; produces bit-identical values to build_sdf.
SignedDistanceField build_sdf_serial(const OccupancyGrid& grid);

// Bilinear interpolation over the cell-center lattice; points beyond the
// lattice clamp to the nearest cell center. Throws on non-finite input.
double signed_distance(const SignedDistanceField& sdf, Point2 p);

// True iff any sample along a->b, stepped at resolution/2 and including both
// endpoints, has signed_distance < clearance.
bool segment_in_collision(const SignedDistanceField& sdf, Point2 a, Point2 b, double clearance);

}  // namespace mazeplan
