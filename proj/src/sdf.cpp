#include "mazeplan/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mazeplan {

namespace {

constexpr double kInf = 1e20;

// 1-D squared-distance transform (lower-envelope parabola method).
// f holds squared distances sampled on a line; out[q] = min_p (q-p)^2 + f[p].
void dt_1d(const double* f, int n, double* out, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = double(q) - v[k];
    out[q] = dq * dq + f[v[k]];
  }
}

// Squared distance in cell units from every cell to the nearest source cell.
// Pass 1 walks each column (distance along y), pass 2 runs the parabola
// envelope along each row. Rows and columns are independent.
template <bool Parallel>
std::vector<double> squared_distance_to(const OccupancyGrid& grid, bool source_is_obstacle) {
  const int w = grid.width();
  const int h = grid.height();
  std::vector<double> sq(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));

#pragma omp parallel for schedule(static) if (Parallel)
  for (int ix = 0; ix < w; ++ix) {
    std::vector<double> col(static_cast<std::size_t>(h));
    for (int iy = 0; iy < h; ++iy)
      col[static_cast<std::size_t>(iy)] = grid.occupied(ix, iy) == source_is_obstacle ? 0.0 : kInf;
    std::vector<double> out(static_cast<std::size_t>(h));
    std::vector<int> v(static_cast<std::size_t>(h));
    std::vector<double> z(static_cast<std::size_t>(h) + 1);
    dt_1d(col.data(), h, out.data(), v.data(), z.data());
    for (int iy = 0; iy < h; ++iy)
      sq[static_cast<std::size_t>(iy) * static_cast<std::size_t>(w) + static_cast<std::size_t>(ix)] =
          out[static_cast<std::size_t>(iy)];
  }

#pragma omp parallel for schedule(static) if (Parallel)
  for (int iy = 0; iy < h; ++iy) {
    double* row = sq.data() + static_cast<std::size_t>(iy) * static_cast<std::size_t>(w);
    std::vector<double> f(row, row + w);
    std::vector<int> v(static_cast<std::size_t>(w));
    std::vector<double> z(static_cast<std::size_t>(w) + 1);
    dt_1d(f.data(), w, row, v.data(), z.data());
  }
  return sq;
}

template <bool Parallel>
SignedDistanceField build_sdf_impl(const OccupancyGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();
  const double res = grid.resolution();
  // Cap for degenerate grids with an empty source set (e.g. no free cell).
  const double max_dist = std::hypot(double(w), double(h));

  const std::vector<double> sq_to_obstacle = squared_distance_to<Parallel>(grid, true);
  const std::vector<double> sq_to_free = squared_distance_to<Parallel>(grid, false);

  std::vector<double> values(sq_to_obstacle.size());
#pragma omp parallel for schedule(static) if (Parallel)
  for (int iy = 0; iy < h; ++iy) {
    for (int ix = 0; ix < w; ++ix) {
      const std::size_t i = static_cast<std::size_t>(iy) * static_cast<std::size_t>(w) + static_cast<std::size_t>(ix);
      const double sq = grid.occupied(ix, iy) ? sq_to_free[i] : sq_to_obstacle[i];
      const double d = sq >= kInf ? max_dist : std::sqrt(sq);
      values[i] = grid.occupied(ix, iy) ? -res * d : res * d;
    }
  }
  return SignedDistanceField(w, h, res, std::move(values));
}

}  // namespace

SignedDistanceField::SignedDistanceField(int width, int height, double resolution, std::vector<double> values)
    : width_(width), height_(height), resolution_(resolution), values_(std::move(values)) {
  if (width < 1 || height < 1 || !(resolution > 0.0))
    throw std::invalid_argument("SignedDistanceField: bad dimensions");
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw std::invalid_argument("SignedDistanceField: value count mismatch");
}

SignedDistanceField build_sdf(const OccupancyGrid& grid) { return build_sdf_impl<true>(grid); }

SignedDistanceField build_sdf_serial(const OccupancyGrid& grid) { return build_sdf_impl<false>(grid); }

double signed_distance(const SignedDistanceField& sdf, Point2 p) {
  if (!is_finite(p)) throw std::invalid_argument("signed_distance: non-finite point");
  const double res = sdf.resolution();
  // Continuous cell-center coordinates: center of cell (ix,iy) is at
  // ((ix+0.5)*res, (iy+0.5)*res).
  const double gx = std::clamp(p.x / res - 0.5, 0.0, double(sdf.width() - 1));
  const double gy = std::clamp(p.y / res - 0.5, 0.0, double(sdf.height() - 1));
  const int ix0 = std::min(static_cast<int>(gx), sdf.width() - 2 >= 0 ? sdf.width() - 2 : 0);
  const int iy0 = std::min(static_cast<int>(gy), sdf.height() - 2 >= 0 ? sdf.height() - 2 : 0);
  const int ix1 = std::min(ix0 + 1, sdf.width() - 1);
  const int iy1 = std::min(iy0 + 1, sdf.height() - 1);
  const double fx = gx - ix0;
  const double fy = gy - iy0;
  const double v00 = sdf.value_at(ix0, iy0);
  const double v10 = sdf.value_at(ix1, iy0);
  const double v01 = sdf.value_at(ix0, iy1);
  const double v11 = sdf.value_at(ix1, iy1);
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11);
}

bool segment_in_collision(const SignedDistanceField& sdf, Point2 a, Point2 b, double clearance) {
  if (!is_finite(a) || !is_finite(b)) throw std::invalid_argument("segment_in_collision: non-finite endpoint");
  if (clearance < 0.0) throw std::invalid_argument("segment_in_collision: clearance must be >= 0");
  const double step = sdf.resolution() / 2.0;
  const double len = distance(a, b);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = double(i) / n;
    const Point2 p = a + t * (b - a);
    if (signed_distance(sdf, p) < clearance) return true;
  }
  return false;
}

}  // namespace mazeplan
