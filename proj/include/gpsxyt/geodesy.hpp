#pragma once

#include <array>
#include <numbers>

namespace gpsxyt {

// Geodetic position in degrees. Longitude is normalized to (-180, 180] by
// the operations that consume it.
struct LatLon {
  double lat_deg = 0;
  double lon_deg = 0;
};

// Frame-local planar position: x to the right of the frame direction, y along
// it, both in meters.
struct PlanarXY {
  double x_m = 0;
  double y_m = 0;
};

class Ellipsoid {
 public:
  // Throws Error(InvalidArgument) unless a > 0 and 0 <= f < 1.
  Ellipsoid(double semi_major_axis_m, double flattening);

  static Ellipsoid wgs84() { return {6378137.0, 1 / 298.257223563}; }
  static Ellipsoid sphere(double radius_m) { return {radius_m, 0.0}; }

  double semi_major_axis_m() const { return a_; }
  double flattening() const { return f_; }
  double semi_minor_axis_m() const { return a_ * (1 - f_); }
  double eccentricity_squared() const { return e2_; }

 private:
  double a_;
  double f_;
  double e2_;
};

struct GeodesicSolution {
  double forward_azimuth_deg;  // clockwise from north, [0, 360)
  double distance_m;
};

// Azimuth at p1 toward p2 and the geodesic distance between them, by
// Vincenty's iterative method. The points are processed in a canonical
// order so that swapping them yields a bit-identical distance.
//
// Throws CoincidentPoints when p1 and p2 agree to 1e-12 degrees, and
// NearAntipodal when the longitude iteration does not settle.
GeodesicSolution geodesic_inverse(const Ellipsoid& ellipsoid, LatLon p1,
                                  LatLon p2);

// Hotine oblique mercator, centered at `origin` with the central line leaving
// the origin at `azimuth_deg`, scale 1 at the center. Output axes are
// rectified at the center to the frame: y along the azimuth, x to its right.
//
// The ellipsoid is first mapped conformally onto Hotine's aposphere (the
// Gauss sphere that keeps scale stationary at the origin latitude). On that
// sphere the central line is the great circle through the image of the
// origin, and the projection is plain transverse-to-that-circle Mercator
// evaluated with unit vectors, so no azimuth or latitude needs special
// casing.
class ObliqueMercator {
 public:
  // Latitude guard for the origin and for projected points.
  static constexpr double kMaxAbsLatitudeDeg = 89.9;

  // Throws PolarOrigin when |origin.lat_deg| >= 89.9.
  ObliqueMercator(const Ellipsoid& ellipsoid, LatLon origin,
                  double azimuth_deg);

  // Throws OutOfDomain for points more than 90 degrees of arc from the
  // origin or poleward of 89.9 degrees.
  PlanarXY forward(LatLon point) const;

  // Throws OutOfDomain for non-finite input.
  LatLon inverse(PlanarXY xy) const;

  LatLon origin() const { return {origin_lat_deg_, origin_lon_deg_}; }
  double azimuth_deg() const { return azimuth_deg_; }
  double scale_at_center() const { return 1.0; }

 private:
  double e_;
  double e2_;
  double origin_lat_deg_;
  double origin_lon_deg_;
  double azimuth_deg_;

  double b_;          // longitude scale onto the aposphere
  double radius_;     // aposphere radius A/B, meters
  double psi0_;       // isometric latitude of the origin on the ellipsoid
  double sphere_psi0_;
  double sin_chi0_;   // aposphere latitude of the origin
  double cos_chi0_;
  double sin_az_;
  double cos_az_;
  std::array<double, 3> origin_normal_;  // geodetic up vector at the origin
};

namespace detail {

constexpr double kDeg = std::numbers::pi / 180;

// tan of the conformal latitude given tau = tan(phi), and its inverse.
double taupf(double tau, double e);
double tauf(double taup, double e);

double normalize_lon(double lon_deg);
double normalize_azimuth(double az_deg);

}  // namespace detail

}  // namespace gpsxyt
