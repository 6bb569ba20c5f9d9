#include "mazeplan/occupancy_grid.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mazeplan {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution)
    : width_(width), height_(height), resolution_(resolution) {
  if (width < 2 || height < 2) throw std::invalid_argument("OccupancyGrid: width and height must be >= 2");
  if (!(resolution > 0.0)) throw std::invalid_argument("OccupancyGrid: resolution must be > 0");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  for (int ix = 0; ix < width_; ++ix) {
    set_occupied(ix, 0, true);
    set_occupied(ix, height_ - 1, true);
  }
  for (int iy = 0; iy < height_; ++iy) {
    set_occupied(0, iy, true);
    set_occupied(width_ - 1, iy, true);
  }
}

void OccupancyGrid::set_occupied(int ix, int iy, bool value) {
  if (ix < 0 || iy < 0 || ix >= width_ || iy >= height_) throw std::out_of_range("OccupancyGrid::set_occupied");
  if (!value && boundary(ix, iy)) return;  // walls stay
  cells_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(ix)] =
      value ? 1 : 0;
}

void OccupancyGrid::fill_rect(int x0, int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width_);
  y1 = std::min(y1, height_);
  for (int iy = y0; iy < y1; ++iy)
    for (int ix = x0; ix < x1; ++ix) set_occupied(ix, iy, true);
}

std::size_t OccupancyGrid::obstacle_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool OccupancyGrid::operator==(const OccupancyGrid& other) const {
  return width_ == other.width_ && height_ == other.height_ && resolution_ == other.resolution_ &&
         cells_ == other.cells_;
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_pgm_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

int parse_pgm_int(std::istream& in, const char* what) {
  const std::string tok = next_pgm_token(in);
  if (tok.empty()) throw std::runtime_error(std::string("graymap: missing ") + what);
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::runtime_error(std::string("graymap: malformed ") + what + " '" + tok + "'");
  return std::stoi(tok);
}

}  // namespace

OccupancyGrid load_map(const std::string& path, double resolution) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_map: cannot open '" + path + "'");

  const std::string magic = next_pgm_token(in);
  if (magic != "P5" && magic != "P2") throw std::runtime_error("load_map: bad magic '" + magic + "'");

  const int width = parse_pgm_int(in, "width");
  const int height = parse_pgm_int(in, "height");
  if (width == 0 || height == 0) throw std::runtime_error("load_map: zero image dimension");
  if (width < 2 || height < 2) throw std::runtime_error("load_map: image too small for a walled grid");
  const int maxval = parse_pgm_int(in, "maxval");
  if (maxval <= 0 || maxval > 255) throw std::runtime_error("load_map: unsupported maxval");

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  if (magic == "P5") {
    // Single whitespace byte separates the header from the raster.
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
      throw std::runtime_error("load_map: truncated raster");
  } else {
    for (auto& px : pixels) {
      const int v = parse_pgm_int(in, "pixel");
      if (v > maxval) throw std::runtime_error("load_map: pixel exceeds maxval");
      px = static_cast<std::uint8_t>(v);
    }
  }

  OccupancyGrid grid(width, height, resolution);
  for (int row = 0; row < height; ++row) {
    const int iy = height - 1 - row;  // image top row -> max-y grid row
    for (int ix = 0; ix < width; ++ix) {
      const std::uint8_t px = pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                                     static_cast<std::size_t>(ix)];
      if (px < 128) grid.set_occupied(ix, iy, true);
    }
  }
  return grid;
}

void save_map(const OccupancyGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_map: cannot open '" + path + "'");
  out << "P5\n" << grid.width() << " " << grid.height() << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(grid.width()));
  for (int iy = grid.height() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.width(); ++ix)
      row[static_cast<std::size_t>(ix)] = grid.occupied(ix, iy) ? 0 : 255;
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("save_map: write failed for '" + path + "'");
}

namespace {

// Horizontal wall band [y0, y1) across the full interior, with a door
// [door_x0, door_x1) left open.
void wall_with_door(OccupancyGrid& g, int y0, int y1, int door_x0, int door_x1) {
  g.fill_rect(0, y0, door_x0, y1);
  g.fill_rect(door_x1, y0, g.width(), y1);
}

}  // namespace

OccupancyGrid gen_benchmark_maze(int id) {
  if (id != 1 && id != 2) throw std::invalid_argument("gen_benchmark_maze: id must be 1 or 2");

  OccupancyGrid g(500, 500, 1.0);
  // 10 m perimeter walls.
  g.fill_rect(0, 0, 500, 10);
  g.fill_rect(0, 490, 500, 500);
  g.fill_rect(0, 0, 10, 500);
  g.fill_rect(490, 0, 500, 500);

  if (id == 1) {
    // Start (400,400), goal (400,100). Doorway walls let the straight x=400
    // corridor through; the middle wall blocks it, detour via the left gap
    // x in [10,45).
    wall_with_door(g, 330, 340, 388, 412);
    wall_with_door(g, 295, 305, 388, 412);
    g.fill_rect(45, 240, 500, 260);
    wall_with_door(g, 195, 205, 388, 412);
    wall_with_door(g, 160, 170, 388, 412);
  } else {
    // Start (250,400), goal (400,100). Doorways sit on the straight
    // segment's crossings; the wide wall blocks it, detour via the left
    // gap x in [10,38).
    wall_with_door(g, 335, 345, 265, 295);
    wall_with_door(g, 275, 285, 295, 325);
    wall_with_door(g, 215, 225, 325, 355);
    g.fill_rect(38, 150, 500, 170);
    wall_with_door(g, 105, 115, 380, 410);
  }
  return g;
}

}  // namespace mazeplan
