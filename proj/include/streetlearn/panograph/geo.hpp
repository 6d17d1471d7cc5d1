#pragma once

#include <cmath>

namespace streetlearn {

// Mean Earth radius used for every distance in the environment.
inline constexpr double kEarthRadiusM = 6371009.0;
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct LatLng {
  double lat = 0.0;  // degrees
  double lng = 0.0;  // degrees

  friend bool operator==(const LatLng&, const LatLng&) = default;
};

// Great-circle distance on the spherical Earth model.
double haversine_m(LatLng a, LatLng b);

// Initial great-circle bearing from a to b in [0, 360), 0 = North, 90 = East.
// Throws std::invalid_argument for coincident points.
double initial_bearing_deg(LatLng a, LatLng b);

// Wraps any angle into [0, 360).
double normalize_deg(double deg);

// Wraps any angle into (-180, 180].
double signed_angle_deg(double deg);

// Local tangent-plane (east, north) offset in meters of p about origin.
struct EastNorth {
  double east = 0.0;
  double north = 0.0;
};
EastNorth to_east_north(LatLng origin, LatLng p);
LatLng from_east_north(LatLng origin, EastNorth offset);

}  // namespace streetlearn
