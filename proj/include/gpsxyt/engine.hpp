#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gpsxyt/geodesy.hpp"
#include "gpsxyt/model.hpp"

namespace gpsxyt {

struct RunResult {
  std::vector<EventSeries> series;  // ordered by (trace, frame, event label)
  std::size_t skipped_empty = 0;    // permutations with no in-interval points
};

// Points with begin <= time <= end, in their original order. Expects a
// time-sorted trace.
std::vector<GeoPoint> clip_to_event(const Trace& trace,
                                    const EventInterval& event);

// Projects clipped points into the frame's local x,y and offsets time from
// the event start. OutOfDomain errors are rethrown naming the point.
EventSeries project_series(std::span<const GeoPoint> points,
                           const std::string& trace_id, const FrameLine& frame,
                           const EventInterval& event,
                           const ObliqueMercator& projection);

struct RunOptions {
  unsigned jobs = 1;  // 0 means one per hardware thread
  Ellipsoid ellipsoid = Ellipsoid::wgs84();
};

// Every trace x frame x event permutation. Empty clips are counted, not
// materialized. The first failing permutation (in output order) aborts the
// run with its trace, frame and event named. Output is identical for any
// number of jobs.
RunResult run(std::span<const Trace> traces, std::span<const Frame> frames,
              const RunOptions& options = {});

}  // namespace gpsxyt
