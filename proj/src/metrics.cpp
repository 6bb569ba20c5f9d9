#include "mazeplan/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mazeplan {

double path_length(const Path& path) {
  if (path.empty()) throw std::invalid_argument("path_length: empty path");
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) length += distance(path[i], path[i + 1]);
  return length;
}

double smoothness(const Path& path) {
  if (path.size() < 3) return 0.0;
  // Drop zero-length segments first; heading is undefined across them.
  Path compact;
  compact.reserve(path.size());
  for (const Point2& p : path)
    if (compact.empty() || !(p == compact.back())) compact.push_back(p);
  if (compact.size() < 3) return 0.0;

  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 1; i + 1 < compact.size(); ++i) {
    const Point2 in = compact[i] - compact[i - 1];
    const Point2 out = compact[i + 1] - compact[i];
    double delta = std::fabs(std::atan2(out.y, out.x) - std::atan2(in.y, in.x));
    if (delta > std::numbers::pi) delta = 2.0 * std::numbers::pi - delta;
    sum += delta;
    ++count;
  }
  return sum / count;
}

}  // namespace mazeplan
