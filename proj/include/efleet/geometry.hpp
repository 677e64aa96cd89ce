#pragma once

#include <cmath>

namespace efleet {

struct Point {
  double x = 0.0;  // miles, planar projection
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Local equirectangular projection around a reference latitude. Good enough
// at metro scale; inputs in degrees, output in miles.
inline Point projectLatLon(double lat, double lon, double refLat, double refLon) {
  constexpr double kMilesPerDegLat = 69.0;
  const double milesPerDegLon = kMilesPerDegLat * std::cos(refLat * M_PI / 180.0);
  return Point{(lon - refLon) * milesPerDegLon, (lat - refLat) * kMilesPerDegLat};
}

}  // namespace efleet
