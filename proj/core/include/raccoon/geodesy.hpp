#pragma once

namespace raccoon {

// IUGG mean Earth radius.
inline constexpr double kEarthRadiusKm = 6371.0088;

// Normalizing maximum surface distance used by the AUC metric.
inline constexpr double kMaxSurfaceDistanceKm = 20039.0;

/// A point on the Earth's surface in decimal degrees.
struct GeoPoint {
  double latitude = 0.0;   // [-90, 90]
  double longitude = 0.0;  // [-180, 180]

  bool operator==(const GeoPoint&) const = default;
};

bool valid_point(const GeoPoint& p);

/// Great-circle distance in kilometres. Symmetric; exactly zero for identical
/// points (longitudes compared modulo 360, so -180 and 180 coincide).
double haversine_km(const GeoPoint& a, const GeoPoint& b);

}  // namespace raccoon
