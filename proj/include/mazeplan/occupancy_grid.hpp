#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mazeplan/geometry.hpp"

namespace mazeplan {

// Boolean obstacle grid, row-major, row 0 at minimum y. Cell (ix, iy) covers
// [ix, ix+1) x [iy, iy+1) in cell units; its center sits at
// ((ix + 0.5) * resolution, (iy + 0.5) * resolution).
//
// The outer one-cell ring is always obstacle: the benchmark mazes are walled
// in, and the ring keeps planners from leaving the domain. set_occupied()
// silently leaves boundary cells occupied.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

  // Out-of-range queries report obstacle.
  bool occupied(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= width_ || iy >= height_) return true;
    return cells_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(ix)] != 0;
  }

  void set_occupied(int ix, int iy, bool value);

  // Marks [x0, x1) x [y0, y1) (cell indices, clamped to the grid) as obstacle.
  void fill_rect(int x0, int y0, int x1, int y1);

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t obstacle_count() const;

  bool operator==(const OccupancyGrid& other) const;

 private:
  bool boundary(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == width_ - 1 || iy == height_ - 1;
  }

  int width_;
  int height_;
  double resolution_;
  std::vector<std::uint8_t> cells_;
};

// Reads a portable graymap (binary "P5" or ASCII "P2", maxval <= 255).
// Pixel value < 128 means obstacle. Graymap row 0 is the top of the image and
// becomes the grid's maximum-y row. Boundary cells are forced to obstacle.
OccupancyGrid load_map(const std::string& path, double resolution = 1.0);

// Writes binary "P5": obstacle -> 0, free -> 255. load_map(save_map(g)) == g.
void save_map(const OccupancyGrid& grid, const std::string& path);

// The two built-in 500x500 m benchmark mazes (1 m per cell). Maze 1 admits
// start (400,400) / goal (400,100); maze 2 admits start (250,400) /
// goal (400,100). In both, the straight start-goal segment crosses exactly
// one wall region and a detour around it exists.
OccupancyGrid gen_benchmark_maze(int id);

}  // namespace mazeplan
