#pragma once

#include <cmath>

namespace cachecast {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool in_disk(const Point2& p, const Point2& center, double radius) {
  // Boundary points count as inside.
  return distance(p, center) <= radius;
}

}  // namespace cachecast
