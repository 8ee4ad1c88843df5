#include "raccoon/geodesy.hpp"

#include <cmath>

namespace raccoon {

namespace {

constexpr double kPi = 3.14159265358979323846;

double to_radians(double degrees) { return degrees * kPi / 180.0; }

// Wrap a longitude difference into [-180, 180] so antipodal wrap-around and
// the -180/180 seam are handled exactly.
double normalize_delta_degrees(double d) {
  while (d > 180.0) d -= 360.0;
  while (d < -180.0) d += 360.0;
  return d;
}

}  // namespace

bool valid_point(const GeoPoint& p) {
  return p.latitude >= -90.0 && p.latitude <= 90.0 && p.longitude >= -180.0 &&
         p.longitude <= 180.0;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = to_radians(b.latitude - a.latitude);
  const double dlon = to_radians(normalize_delta_degrees(b.longitude - a.longitude));
  const double lat1 = to_radians(a.latitude);
  const double lat2 = to_radians(b.latitude);

  const double sin_lat = std::sin(dlat / 2.0);
  const double sin_lon = std::sin(dlon / 2.0);
  double h = sin_lat * sin_lat + std::cos(lat1) * std::cos(lat2) * sin_lon * sin_lon;
  if (h > 1.0) h = 1.0;
  if (h < 0.0) h = 0.0;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace raccoon
