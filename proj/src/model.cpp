#include "gpsxyt/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gpsxyt/error.hpp"

namespace gpsxyt {

GeoPoint::GeoPoint(double lat_deg, double lon_deg, Instant time_utc)
    : lat_deg_(lat_deg), lon_deg_(lon_deg), time_utc_(time_utc) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg) ||
      std::abs(lat_deg) > 90.0) {
    throw Error(ErrorCode::InvalidArgument,
                "invalid coordinates (" + std::to_string(lat_deg) + ", " +
                    std::to_string(lon_deg) + ")");
  }
  lon_deg_ = detail::normalize_lon(lon_deg);
}

Trace::Trace(std::string id, std::vector<GeoPoint> points)
    : id_(std::move(id)), points_(std::move(points)) {
  if (id_.empty()) throw Error(ErrorCode::InvalidArgument, "empty trace id");
  std::stable_sort(points_.begin(), points_.end(),
                   [](const GeoPoint& a, const GeoPoint& b) {
                     return a.time_utc() < b.time_utc();
                   });
}

FrameLine::FrameLine(std::string id, LatLon origin, LatLon target,
                     const Ellipsoid& ellipsoid)
    : id_(std::move(id)) {
  const GeodesicSolution g = geodesic_inverse(ellipsoid, origin, target);
  origin_ = {origin.lat_deg, detail::normalize_lon(origin.lon_deg)};
  target_ = {target.lat_deg, detail::normalize_lon(target.lon_deg)};
  azimuth_deg_ = g.forward_azimuth_deg;
  length_m_ = g.distance_m;
}

EventInterval::EventInterval(Instant begin_utc, Instant end_utc,
                             std::string label)
    : begin_utc_(begin_utc), end_utc_(end_utc), label_(std::move(label)) {
  if (end_utc_ < begin_utc_) {
    throw Error(ErrorCode::ReversedInterval, "interval ends before it begins");
  }
}

EventSeries::EventSeries(std::string trace_id, std::string frame_id,
                         std::string event_label,
                         std::vector<LocalPoint> points)
    : trace_id_(std::move(trace_id)),
      frame_id_(std::move(frame_id)),
      event_label_(std::move(event_label)),
      points_(std::move(points)) {
  if (points_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "event series has no points");
  }
  auto by_time = [](const LocalPoint& a, const LocalPoint& b) {
    return a.t_s < b.t_s;
  };
  if (!std::is_sorted(points_.begin(), points_.end(), by_time)) {
    throw Error(ErrorCode::InvalidArgument, "event series is not time ordered");
  }
}

}  // namespace gpsxyt
