#include "mazeplan/svg.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mazeplan {

namespace {

void append_polyline(std::ostringstream& out, const Path& pts, const std::string& color, double width,
                     double world_h) {
  if (pts.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
  for (const Point2& p : pts) out << p.x << "," << (world_h - p.y) << " ";
  out << "\"/>\n";
}

}  // namespace

std::string render_svg(const OccupancyGrid& grid, const SvgScene& scene) {
  const double res = grid.resolution();
  const double w = grid.width() * res;
  const double h = grid.height() * res;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 " << w << " "
      << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#f4f4f4\"/>\n";

  // Obstacle cells merged into per-row runs.
  for (int iy = 0; iy < grid.height(); ++iy) {
    int ix = 0;
    while (ix < grid.width()) {
      if (!grid.occupied(ix, iy)) {
        ++ix;
        continue;
      }
      int run = ix;
      while (run < grid.width() && grid.occupied(run, iy)) ++run;
      out << "<rect x=\"" << ix * res << "\" y=\"" << h - (iy + 1) * res << "\" width=\"" << (run - ix) * res
          << "\" height=\"" << res << "\" fill=\"#5a5a5a\"/>\n";
      ix = run;
    }
  }

  for (const Tree* tree : scene.trees) {
    if (tree == nullptr) continue;
    out << "<g stroke=\"#00c8c8\" stroke-width=\"0.6\">\n";
    for (std::size_t v = 0; v < tree->vertices.size(); ++v) {
      const int p = tree->parent[v];
      if (p < 0) continue;
      const Point2 a = tree->vertices[v];
      const Point2 b = tree->vertices[static_cast<std::size_t>(p)];
      out << "<line x1=\"" << a.x << "\" y1=\"" << h - a.y << "\" x2=\"" << b.x << "\" y2=\"" << h - b.y
          << "\"/>\n";
    }
    out << "</g>\n";
  }

  for (const SvgPolyline& line : scene.polylines) append_polyline(out, line.points, line.color, line.width, h);

  if (scene.markers) {
    out << "<circle cx=\"" << scene.start.x << "\" cy=\"" << h - scene.start.y
        << "\" r=\"6\" fill=\"#00a000\"/>\n";
    out << "<circle cx=\"" << scene.goal.x << "\" cy=\"" << h - scene.goal.y
        << "\" r=\"6\" fill=\"#d00000\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::string& path, const OccupancyGrid& grid, const SvgScene& scene) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg: cannot open '" + path + "'");
  out << render_svg(grid, scene);
}

}  // namespace mazeplan
