#include "gpsxyt/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gpsxyt/error.hpp"

namespace gpsxyt {

namespace detail {

double taupf(double tau, double e) {
  double tau1 = std::hypot(1.0, tau);
  double sig = std::sinh(e * std::atanh(e * tau / tau1));
  return std::hypot(1.0, sig) * tau - sig * tau1;
}

double tauf(double taup, double e) {
  constexpr int kMaxIterations = 10;
  const double tol = std::sqrt(std::numeric_limits<double>::epsilon()) / 10;
  const double e2m = 1 - e * e;
  double tau = taup / e2m;
  const double stol = tol * std::max(1.0, std::abs(taup));
  for (int i = 0; i < kMaxIterations; ++i) {
    double taupa = taupf(tau, e);
    double dtau = (taup - taupa) * (1 + e2m * tau * tau) /
                  (e2m * std::hypot(1.0, tau) * std::hypot(1.0, taupa));
    tau += dtau;
    if (!(std::abs(dtau) >= stol)) break;
  }
  return tau;
}

double normalize_lon(double lon_deg) {
  double r = std::remainder(lon_deg, 360.0);  // [-180, 180]
  return r == -180.0 ? 180.0 : r;
}

double normalize_azimuth(double az_deg) {
  double r = std::fmod(az_deg, 360.0);
  if (r < 0) r += 360.0;
  return r >= 360.0 ? 0.0 : r + 0.0;
}

}  // namespace detail

namespace {

using detail::kDeg;

void require_latlon(LatLon p, const char* what) {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg) ||
      std::abs(p.lat_deg) > 90.0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " is not a valid latitude/longitude: (" +
                    std::to_string(p.lat_deg) + ", " +
                    std::to_string(p.lon_deg) + ")");
  }
}

std::array<double, 3> unit_normal(double lat_deg, double lon_deg) {
  double phi = lat_deg * kDeg;
  double lam = lon_deg * kDeg;
  return {std::cos(phi) * std::cos(lam), std::cos(phi) * std::sin(lam),
          std::sin(phi)};
}

double isometric_latitude(double phi, double e) {
  return std::asinh(detail::taupf(std::tan(phi), e));
}

}  // namespace

Ellipsoid::Ellipsoid(double semi_major_axis_m, double flattening)
    : a_(semi_major_axis_m), f_(flattening), e2_(flattening * (2 - flattening)) {
  if (!(a_ > 0) || !std::isfinite(a_) || !(f_ >= 0 && f_ < 1)) {
    throw Error(ErrorCode::InvalidArgument,
                "ellipsoid requires a > 0 and 0 <= f < 1");
  }
}

GeodesicSolution geodesic_inverse(const Ellipsoid& ellipsoid, LatLon p1,
                                  LatLon p2) {
  constexpr double kCoincidentDeg = 1e-12;
  constexpr double kLambdaTolerance = 1e-12;
  constexpr int kMaxIterations = 200;

  require_latlon(p1, "first point");
  require_latlon(p2, "second point");
  p1.lon_deg = detail::normalize_lon(p1.lon_deg);
  p2.lon_deg = detail::normalize_lon(p2.lon_deg);

  const double dlon_deg = detail::normalize_lon(p2.lon_deg - p1.lon_deg);
  const bool same_pole =
      std::abs(p1.lat_deg) == 90.0 && p1.lat_deg == p2.lat_deg;
  if (same_pole || (std::abs(p1.lat_deg - p2.lat_deg) <= kCoincidentDeg &&
                    std::abs(dlon_deg) <= kCoincidentDeg)) {
    throw Error(ErrorCode::CoincidentPoints,
                "coincident points have no defined azimuth");
  }

  // Solve in a canonical order; swapping the arguments must not change the
  // arithmetic path.
  const bool swapped = std::pair(p2.lat_deg, p2.lon_deg) <
                       std::pair(p1.lat_deg, p1.lon_deg);
  if (swapped) std::swap(p1, p2);

  const double a = ellipsoid.semi_major_axis_m();
  const double f = ellipsoid.flattening();
  const double b = ellipsoid.semi_minor_axis_m();

  const double L = detail::normalize_lon(p2.lon_deg - p1.lon_deg) * kDeg;
  const double phi1 = p1.lat_deg * kDeg;
  const double phi2 = p2.lat_deg * kDeg;
  const double U1 = std::atan2((1 - f) * std::sin(phi1), std::cos(phi1));
  const double U2 = std::atan2((1 - f) * std::sin(phi2), std::cos(phi2));
  const double sinU1 = std::sin(U1), cosU1 = std::cos(U1);
  const double sinU2 = std::sin(U2), cosU2 = std::cos(U2);

  double lambda = L;
  double sin_lambda = 0, cos_lambda = 0;
  double sin_sigma = 0, cos_sigma = 0, sigma = 0;
  double cos2_alpha = 0, cos_2sigma_m = 0;
  bool converged = false;
  for (int i = 0; i < kMaxIterations; ++i) {
    sin_lambda = std::sin(lambda);
    cos_lambda = std::cos(lambda);
    const double t1 = cosU2 * sin_lambda;
    const double t2 = cosU1 * sinU2 - sinU1 * cosU2 * cos_lambda;
    sin_sigma = std::hypot(t1, t2);
    if (sin_sigma == 0) {
      throw Error(ErrorCode::CoincidentPoints,
                  "coincident points have no defined azimuth");
    }
    cos_sigma = sinU1 * sinU2 + cosU1 * cosU2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cosU1 * cosU2 * sin_lambda / sin_sigma;
    cos2_alpha = 1 - sin_alpha * sin_alpha;
    cos_2sigma_m =
        cos2_alpha != 0 ? cos_sigma - 2 * sinU1 * sinU2 / cos2_alpha : 0.0;
    const double C = f / 16 * cos2_alpha * (4 + f * (4 - 3 * cos2_alpha));
    const double previous = lambda;
    lambda = L + (1 - C) * f * sin_alpha *
                     (sigma + C * sin_sigma *
                                  (cos_2sigma_m +
                                   C * cos_sigma *
                                       (-1 + 2 * cos_2sigma_m * cos_2sigma_m)));
    if (!std::isfinite(lambda) || std::abs(lambda) > std::numbers::pi) break;
    if (std::abs(lambda - previous) <= kLambdaTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NearAntipodal,
                "geodesic iteration did not converge (nearly antipodal points)");
  }
  // Final trig at the converged lambda.
  sin_lambda = std::sin(lambda);
  cos_lambda = std::cos(lambda);

  const double u2 = cos2_alpha * (a * a - b * b) / (b * b);
  const double A =
      1 + u2 / 16384 * (4096 + u2 * (-768 + u2 * (320 - 175 * u2)));
  const double B = u2 / 1024 * (256 + u2 * (-128 + u2 * (74 - 47 * u2)));
  const double c2sm2 = cos_2sigma_m * cos_2sigma_m;
  const double delta_sigma =
      B * sin_sigma *
      (cos_2sigma_m +
       B / 4 *
           (cos_sigma * (-1 + 2 * c2sm2) -
            B / 6 * cos_2sigma_m * (-3 + 4 * sin_sigma * sin_sigma) *
                (-3 + 4 * c2sm2)));
  const double distance = b * A * (sigma - delta_sigma);

  double azimuth;
  if (!swapped) {
    azimuth = std::atan2(cosU2 * sin_lambda,
                         cosU1 * sinU2 - sinU1 * cosU2 * cos_lambda) / kDeg;
  } else {
    // Azimuth of the canonical geodesic at its far end, reversed.
    azimuth = std::atan2(cosU1 * sin_lambda,
                         -sinU1 * cosU2 + cosU1 * sinU2 * cos_lambda) / kDeg +
              180.0;
  }
  return {detail::normalize_azimuth(azimuth), distance};
}

ObliqueMercator::ObliqueMercator(const Ellipsoid& ellipsoid, LatLon origin,
                                 double azimuth_deg) {
  require_latlon(origin, "projection origin");
  if (!std::isfinite(azimuth_deg)) {
    throw Error(ErrorCode::InvalidArgument, "azimuth must be finite");
  }
  if (std::abs(origin.lat_deg) >= kMaxAbsLatitudeDeg) {
    throw Error(ErrorCode::PolarOrigin,
                "projection origin latitude " + std::to_string(origin.lat_deg) +
                    " is within 0.1 degrees of a pole");
  }
  e2_ = ellipsoid.eccentricity_squared();
  e_ = std::sqrt(e2_);
  origin_lat_deg_ = origin.lat_deg;
  origin_lon_deg_ = detail::normalize_lon(origin.lon_deg);
  azimuth_deg_ = detail::normalize_azimuth(azimuth_deg);

  const double phi0 = origin_lat_deg_ * kDeg;
  const double sin_phi0 = std::sin(phi0);
  const double cos_phi0 = std::cos(phi0);
  const double e2m = 1 - e2_;
  const double w2 = 1 - e2_ * sin_phi0 * sin_phi0;

  b_ = std::sqrt(1 + e2_ * std::pow(cos_phi0, 4) / e2m);
  const double A = ellipsoid.semi_major_axis_m() * b_ * std::sqrt(e2m) / w2;
  radius_ = A / b_;
  // Hotine's D equals 1 / cos(chi0); sin(chi0) = sin(phi0) / B is the
  // better-conditioned route to the same latitude.
  psi0_ = isometric_latitude(phi0, e_);
  sphere_psi0_ = std::atanh(sin_phi0 / b_);
  sin_chi0_ = std::tanh(sphere_psi0_);
  cos_chi0_ = 1 / std::cosh(sphere_psi0_);

  sin_az_ = std::sin(azimuth_deg_ * kDeg);
  cos_az_ = std::cos(azimuth_deg_ * kDeg);
  origin_normal_ = unit_normal(origin_lat_deg_, origin_lon_deg_);
}

PlanarXY ObliqueMercator::forward(LatLon point) const {
  if (!std::isfinite(point.lat_deg) || !std::isfinite(point.lon_deg) ||
      std::abs(point.lat_deg) > kMaxAbsLatitudeDeg) {
    throw Error(ErrorCode::OutOfDomain,
                "point (" + std::to_string(point.lat_deg) + ", " +
                    std::to_string(point.lon_deg) +
                    ") is outside the projectable latitude range");
  }
  const auto n = unit_normal(point.lat_deg, point.lon_deg);
  if (n[0] * origin_normal_[0] + n[1] * origin_normal_[1] +
          n[2] * origin_normal_[2] < 0) {
    throw Error(ErrorCode::OutOfDomain,
                "point (" + std::to_string(point.lat_deg) + ", " +
                    std::to_string(point.lon_deg) +
                    ") is more than 90 degrees from the projection origin");
  }

  const double phi = point.lat_deg * kDeg;
  const double dlon =
      detail::normalize_lon(point.lon_deg - origin_lon_deg_) * kDeg;
  const double sphere_psi =
      b_ * (isometric_latitude(phi, e_) - psi0_) + sphere_psi0_;
  const double sin_chi = std::tanh(sphere_psi);
  const double cos_chi = 1 / std::cosh(sphere_psi);
  const double lam = b_ * dlon;
  const double cos_lam = std::cos(lam);

  // Components of the aposphere point in the east/north/up basis of the
  // origin's image.
  const double up = sin_chi * sin_chi0_ + cos_chi * cos_chi0_ * cos_lam;
  const double east = cos_chi * std::sin(lam);
  const double north = sin_chi * cos_chi0_ - cos_chi * sin_chi0_ * cos_lam;

  const double along = cos_az_ * north + sin_az_ * east;
  const double right = cos_az_ * east - sin_az_ * north;
  if (!(std::abs(right) < 1)) {
    throw Error(ErrorCode::OutOfDomain,
                "point lies on the pole of the central line");
  }
  const double u = radius_ * std::atan2(along, up);
  const double v = radius_ * std::atanh(right);
  return {v + 0.0, u + 0.0};
}

LatLon ObliqueMercator::inverse(PlanarXY xy) const {
  if (!std::isfinite(xy.x_m) || !std::isfinite(xy.y_m)) {
    throw Error(ErrorCode::OutOfDomain, "non-finite planar coordinates");
  }
  const double u = xy.y_m / radius_;
  const double v = xy.x_m / radius_;
  const double sin_off = std::tanh(v);
  const double cos_off = 1 / std::cosh(v);
  const double up = cos_off * std::cos(u);
  const double along = cos_off * std::sin(u);

  const double north = along * cos_az_ - sin_off * sin_az_;
  const double east = along * sin_az_ + sin_off * cos_az_;
  const double X = up * cos_chi0_ - north * sin_chi0_;
  const double Y = east;
  const double Z = up * sin_chi0_ + north * cos_chi0_;

  const double lam = std::atan2(Y, X);
  const double sphere_psi = std::asinh(Z / std::hypot(X, Y));
  const double psi = (sphere_psi - sphere_psi0_) / b_ + psi0_;
  const double phi = std::atan(detail::tauf(std::sinh(psi), e_));
  LatLon out{phi / kDeg, detail::normalize_lon(origin_lon_deg_ + lam / b_ / kDeg)};
  if (!std::isfinite(out.lat_deg) || !std::isfinite(out.lon_deg)) {
    throw Error(ErrorCode::OutOfDomain, "planar coordinates have no inverse");
  }
  return out;
}

}  // namespace gpsxyt
