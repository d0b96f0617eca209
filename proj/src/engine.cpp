#include "gpsxyt/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <tuple>

#include "gpsxyt/error.hpp"

namespace gpsxyt {

std::vector<GeoPoint> clip_to_event(const Trace& trace,
                                    const EventInterval& event) {
  const auto& pts = trace.points();
  auto first = std::lower_bound(
      pts.begin(), pts.end(), event.begin_utc(),
      [](const GeoPoint& p, Instant t) { return p.time_utc() < t; });
  auto last = std::upper_bound(
      first, pts.end(), event.end_utc(),
      [](Instant t, const GeoPoint& p) { return t < p.time_utc(); });
  return {first, last};
}

EventSeries project_series(std::span<const GeoPoint> points,
                           const std::string& trace_id, const FrameLine& frame,
                           const EventInterval& event,
                           const ObliqueMercator& projection) {
  std::vector<LocalPoint> local;
  local.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GeoPoint& p = points[i];
    PlanarXY xy;
    try {
      xy = projection.forward(p.position());
    } catch (const Error& e) {
      throw e.with_context("point " + std::to_string(i));
    }
    local.push_back(
        {xy.x_m, xy.y_m, seconds_between(event.begin_utc(), p.time_utc())});
  }
  return {trace_id, frame.id(), event.label(), std::move(local)};
}

namespace {

struct Permutation {
  const Trace* trace;
  const Frame* frame;
  const EventInterval* event;
  std::size_t frame_index;
};

std::string describe(const Permutation& p) {
  return "trace \"" + p.trace->id() + "\", frame \"" + p.frame->line.id() +
         "\", event \"" + p.event->label() + "\"";
}

}  // namespace

RunResult run(std::span<const Trace> traces, std::span<const Frame> frames,
              const RunOptions& options) {
  // One projection per frame line, shared by all its permutations.
  std::vector<ObliqueMercator> projections;
  projections.reserve(frames.size());
  for (const Frame& f : frames) {
    try {
      projections.emplace_back(options.ellipsoid, f.line.origin(),
                               f.line.azimuth_deg());
    } catch (const Error& e) {
      throw e.with_context("frame \"" + f.line.id() + "\"");
    }
  }

  std::vector<Permutation> work;
  for (const Trace& t : traces) {
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
      for (const EventInterval& e : frames[fi].events) {
        work.push_back({&t, &frames[fi], &e, fi});
      }
    }
  }
  std::stable_sort(work.begin(), work.end(),
                   [](const Permutation& a, const Permutation& b) {
                     return std::tie(a.trace->id(), a.frame->line.id(),
                                     a.event->label()) <
                            std::tie(b.trace->id(), b.frame->line.id(),
                                     b.event->label());
                   });

  std::vector<std::optional<EventSeries>> results(work.size());
  std::vector<std::exception_ptr> failures(work.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_failure{work.size()};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      // Permutations after a known failure cannot change the outcome.
      if (i > first_failure.load()) continue;
      const Permutation& p = work[i];
      try {
        auto clipped = clip_to_event(*p.trace, *p.event);
        if (!clipped.empty()) {
          results[i] = project_series(clipped, p.trace->id(), p.frame->line,
                                      *p.event, projections[p.frame_index]);
        }
      } catch (...) {
        failures[i] = std::current_exception();
        std::size_t seen = first_failure.load();
        while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
        }
      }
    }
  };

  unsigned jobs = options.jobs;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(
      std::min<std::size_t>(jobs, std::max<std::size_t>(work.size(), 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  RunResult out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error& e) {
        throw e.with_context(describe(work[i]));
      }
    }
    if (results[i]) {
      out.series.push_back(std::move(*results[i]));
    } else {
      ++out.skipped_empty;
    }
  }
  return out;
}

}  // namespace gpsxyt
