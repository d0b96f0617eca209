#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "gpsxyt/geodesy.hpp"

namespace gpsxyt {

// Absolute UTC instant with microsecond resolution.
using Instant = std::chrono::sys_time<std::chrono::microseconds>;

// Seconds from `from` to `to`, fractional.
inline double seconds_between(Instant from, Instant to) {
  return std::chrono::duration<double>(to - from).count();
}

// A timestamped WGS84 fix.
class GeoPoint {
 public:
  // Throws InvalidArgument when |lat| > 90 or either coordinate is not
  // finite. Longitude is normalized to (-180, 180].
  GeoPoint(double lat_deg, double lon_deg, Instant time_utc);

  double lat_deg() const { return lat_deg_; }
  double lon_deg() const { return lon_deg_; }
  LatLon position() const { return {lat_deg_, lon_deg_}; }
  Instant time_utc() const { return time_utc_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lat_deg_;
  double lon_deg_;
  Instant time_utc_;
};

// One GPS trajectory. Points are stably sorted by time on construction.
class Trace {
 public:
  Trace(std::string id, std::vector<GeoPoint> points);

  const std::string& id() const { return id_; }
  const std::vector<GeoPoint>& points() const { return points_; }

 private:
  std::string id_;
  std::vector<GeoPoint> points_;
};

// Directed two-point line: the spatial half of a reference frame.
class FrameLine {
 public:
  // Computes azimuth and length with geodesic_inverse; rethrows its errors
  // (CoincidentPoints for a zero-length line).
  FrameLine(std::string id, LatLon origin, LatLon target,
            const Ellipsoid& ellipsoid = Ellipsoid::wgs84());

  const std::string& id() const { return id_; }
  LatLon origin() const { return origin_; }
  LatLon target() const { return target_; }
  double azimuth_deg() const { return azimuth_deg_; }
  double length_m() const { return length_m_; }

 private:
  std::string id_;
  LatLon origin_;
  LatLon target_;
  double azimuth_deg_;
  double length_m_;
};

// Closed interval [begin, end]: the temporal half of a reference frame.
class EventInterval {
 public:
  // Throws ReversedInterval when end < begin.
  EventInterval(Instant begin_utc, Instant end_utc, std::string label = {});

  Instant begin_utc() const { return begin_utc_; }
  Instant end_utc() const { return end_utc_; }
  const std::string& label() const { return label_; }
  double duration_s() const { return seconds_between(begin_utc_, end_utc_); }

  bool contains(Instant t) const { return begin_utc_ <= t && t <= end_utc_; }

  EventInterval relabeled(std::string label) const {
    return {begin_utc_, end_utc_, std::move(label)};
  }

  friend bool operator==(const EventInterval&, const EventInterval&) = default;

 private:
  Instant begin_utc_;
  Instant end_utc_;
  std::string label_;
};

struct LocalPoint {
  double x_m;  // perpendicular to the frame, positive to the right
  double y_m;  // along the frame direction
  double t_s;  // seconds since the event began

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

// The local x,y,t series of one (trace, frame, event) permutation.
class EventSeries {
 public:
  // Throws InvalidArgument for an empty series or decreasing t.
  EventSeries(std::string trace_id, std::string frame_id,
              std::string event_label, std::vector<LocalPoint> points);

  const std::string& trace_id() const { return trace_id_; }
  const std::string& frame_id() const { return frame_id_; }
  const std::string& event_label() const { return event_label_; }
  const std::vector<LocalPoint>& points() const { return points_; }

 private:
  std::string trace_id_;
  std::string frame_id_;
  std::string event_label_;
  std::vector<LocalPoint> points_;
};

// A frame line together with the events attached to it.
struct Frame {
  FrameLine line;
  std::vector<EventInterval> events;
};

}  // namespace gpsxyt
