#include "streetlearn/panograph/geo.hpp"

#include <algorithm>
#include <stdexcept>

namespace streetlearn {

double haversine_m(LatLng a, LatLng b) {
  const double phi1 = deg_to_rad(a.lat);
  const double phi2 = deg_to_rad(b.lat);
  const double dphi = phi2 - phi1;
  const double dlambda = deg_to_rad(b.lng - a.lng);
  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  const double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

double initial_bearing_deg(LatLng a, LatLng b) {
  if (a == b) {
    throw std::invalid_argument("initial_bearing_deg: coincident points");
  }
  const double phi1 = deg_to_rad(a.lat);
  const double phi2 = deg_to_rad(b.lat);
  const double dlambda = deg_to_rad(b.lng - a.lng);
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  return normalize_deg(rad_to_deg(std::atan2(y, x)));
}

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  if (r >= 360.0) r = 0.0;
  return r;
}

double signed_angle_deg(double deg) {
  // Each step is exact in floating point, so signed_angle_deg(-a) == -signed_angle_deg(a)
  // away from the +-180 seam.
  double r = std::fmod(deg, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

EastNorth to_east_north(LatLng origin, LatLng p) {
  const double cos_lat = std::cos(deg_to_rad(origin.lat));
  return {deg_to_rad(p.lng - origin.lng) * kEarthRadiusM * cos_lat,
          deg_to_rad(p.lat - origin.lat) * kEarthRadiusM};
}

LatLng from_east_north(LatLng origin, EastNorth offset) {
  const double cos_lat = std::cos(deg_to_rad(origin.lat));
  return {origin.lat + rad_to_deg(offset.north / kEarthRadiusM),
          origin.lng + rad_to_deg(offset.east / (kEarthRadiusM * cos_lat))};
}

}  // namespace streetlearn
