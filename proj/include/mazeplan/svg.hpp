#pragma once

#include <string>
#include <vector>

#include "mazeplan/occupancy_grid.hpp"
#include "mazeplan/rrt.hpp"

namespace mazeplan {

// Storyboard colors: start green, goal red, GPMP2 path purple, RRT path
// blue, tree branches cyan.
struct SvgPolyline {
  Path points;
  std::string color = "#000000";
  double width = 2.0;
};

struct SvgScene {
  std::vector<const Tree*> trees;
  std::vector<SvgPolyline> polylines;  // drawn in order, later on top
  Point2 start;
  Point2 goal;
  bool markers = true;
};

// Map rendered in grayscale (obstacle runs as rectangles), y axis up.
std::string render_svg(const OccupancyGrid& grid, const SvgScene& scene);

void write_svg(const std::string& path, const OccupancyGrid& grid, const SvgScene& scene);

}  // namespace mazeplan
