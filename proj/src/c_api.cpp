#include "gpsxyt/gpsxyt.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "gpsxyt/engine.hpp"
#include "gpsxyt/error.hpp"
#include "gpsxyt/ingest.hpp"
#include "gpsxyt/output.hpp"

struct gxyt_projection {
  gpsxyt::ObliqueMercator impl;
};

struct gxyt_inputs {
  std::vector<gpsxyt::Frame> frames;
  std::vector<gpsxyt::Trace> traces;
  std::vector<std::string> warnings;
};

struct gxyt_result {
  gpsxyt::RunResult impl;
};

namespace {

thread_local std::string last_error;

gxyt_status fail(gxyt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into a status and last_error.
template <typename F>
gxyt_status guarded(F&& body) {
  try {
    body();
    return GXYT_OK;
  } catch (const gpsxyt::Error& e) {
    return fail(static_cast<gxyt_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GXYT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GXYT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GXYT_ERR_INTERNAL, "unknown error");
  }
}

gpsxyt::Ellipsoid to_ellipsoid(const gxyt_ellipsoid* e) {
  if (!e) return gpsxyt::Ellipsoid::wgs84();
  return {e->semi_major_axis_m, e->flattening};
}

void require(bool ok, const char* what) {
  if (!ok) {
    throw gpsxyt::Error(gpsxyt::ErrorCode::InvalidArgument,
                        std::string(what) + " must not be NULL");
  }
}

void append_warnings(gxyt_inputs& in, const gpsxyt::Warnings& w) {
  for (const auto& item : w) {
    in.warnings.push_back(item.source + ": " + item.message);
  }
}

}  // namespace

extern "C" {

const char* gxyt_version(void) { return GPSXYT_VERSION; }

const char* gxyt_status_name(gxyt_status status) {
  if (status == GXYT_OK) return "Ok";
  if (status == GXYT_ERR_INTERNAL) return "Internal";
  static thread_local std::string name;
  name = gpsxyt::error_name(static_cast<gpsxyt::ErrorCode>(status));
  return name.c_str();
}

const char* gxyt_last_error_message(void) { return last_error.c_str(); }

gxyt_ellipsoid gxyt_wgs84(void) {
  const auto e = gpsxyt::Ellipsoid::wgs84();
  return {e.semi_major_axis_m(), e.flattening()};
}

gxyt_status gxyt_geodesic_inverse(const gxyt_ellipsoid* ellipsoid, double lat1,
                                  double lon1, double lat2, double lon2,
                                  double* azimuth_deg, double* distance_m) {
  return guarded([&] {
    require(azimuth_deg && distance_m, "output pointers");
    const auto g = gpsxyt::geodesic_inverse(to_ellipsoid(ellipsoid),
                                            {lat1, lon1}, {lat2, lon2});
    *azimuth_deg = g.forward_azimuth_deg;
    *distance_m = g.distance_m;
  });
}

gxyt_status gxyt_projection_create(const gxyt_ellipsoid* ellipsoid,
                                   double origin_lat, double origin_lon,
                                   double azimuth_deg, gxyt_projection** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gxyt_projection{gpsxyt::ObliqueMercator(
        to_ellipsoid(ellipsoid), {origin_lat, origin_lon}, azimuth_deg)};
  });
}

gxyt_status gxyt_projection_forward(const gxyt_projection* projection,
                                    double lat, double lon, double* x_m,
                                    double* y_m) {
  return guarded([&] {
    require(projection && x_m && y_m, "projection and output pointers");
    const auto xy = projection->impl.forward({lat, lon});
    *x_m = xy.x_m;
    *y_m = xy.y_m;
  });
}

gxyt_status gxyt_projection_inverse(const gxyt_projection* projection,
                                    double x_m, double y_m, double* lat,
                                    double* lon) {
  return guarded([&] {
    require(projection && lat && lon, "projection and output pointers");
    const auto p = projection->impl.inverse({x_m, y_m});
    *lat = p.lat_deg;
    *lon = p.lon_deg;
  });
}

void gxyt_projection_destroy(gxyt_projection* projection) { delete projection; }

gxyt_status gxyt_parse_interval(const char* text, int64_t* begin_us,
                                int64_t* end_us) {
  return guarded([&] {
    require(text && begin_us && end_us, "text and output pointers");
    const auto e = gpsxyt::parse_interval(text);
    *begin_us = e.begin_utc().time_since_epoch().count();
    *end_us = e.end_utc().time_since_epoch().count();
  });
}

gxyt_status gxyt_inputs_load(const char* frames_path, const char* traces_dir,
                             int recurse, gxyt_inputs** out) {
  return guarded([&] {
    require(frames_path && traces_dir && out, "paths and out");
    auto loaded = gpsxyt::load_inputs(frames_path, traces_dir, recurse != 0);
    auto* in = new gxyt_inputs{std::move(loaded.frames),
                               std::move(loaded.traces), {}};
    append_warnings(*in, loaded.report.warnings);
    *out = in;
  });
}

gxyt_status gxyt_inputs_create(gxyt_inputs** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gxyt_inputs{};
  });
}

gxyt_status gxyt_inputs_add_frames_geojson(gxyt_inputs* inputs,
                                           const char* geojson) {
  return guarded([&] {
    require(inputs && geojson, "inputs and geojson");
    gpsxyt::Warnings w;
    auto frames = gpsxyt::parse_frames(geojson, &w);
    for (auto& f : frames) inputs->frames.push_back(std::move(f));
    append_warnings(*inputs, w);
  });
}

gxyt_status gxyt_inputs_add_trace_gpx(gxyt_inputs* inputs, const char* gpx,
                                      const char* id) {
  return guarded([&] {
    require(inputs && gpx && id, "inputs, gpx and id");
    gpsxyt::Warnings w;
    auto trace = gpsxyt::parse_gpx(gpx, id, &w);
    for (const auto& t : inputs->traces) {
      if (t.id() == trace.id()) {
        throw gpsxyt::Error(gpsxyt::ErrorCode::InvalidArgument,
                            "duplicate trace id \"" + trace.id() + "\"");
      }
    }
    inputs->traces.push_back(std::move(trace));
    append_warnings(*inputs, w);
  });
}

size_t gxyt_inputs_trace_count(const gxyt_inputs* inputs) {
  return inputs ? inputs->traces.size() : 0;
}

size_t gxyt_inputs_frame_count(const gxyt_inputs* inputs) {
  return inputs ? inputs->frames.size() : 0;
}

size_t gxyt_inputs_event_count(const gxyt_inputs* inputs) {
  size_t n = 0;
  if (inputs) {
    for (const auto& f : inputs->frames) n += f.events.size();
  }
  return n;
}

size_t gxyt_inputs_warning_count(const gxyt_inputs* inputs) {
  return inputs ? inputs->warnings.size() : 0;
}

const char* gxyt_inputs_warning(const gxyt_inputs* inputs, size_t index) {
  if (!inputs || index >= inputs->warnings.size()) return nullptr;
  return inputs->warnings[index].c_str();
}

void gxyt_inputs_destroy(gxyt_inputs* inputs) { delete inputs; }

gxyt_status gxyt_run(const gxyt_inputs* inputs, unsigned jobs,
                     gxyt_result** out) {
  return guarded([&] {
    require(inputs && out, "inputs and out");
    gpsxyt::RunOptions options;
    options.jobs = jobs;
    *out = new gxyt_result{
        gpsxyt::run(inputs->traces, inputs->frames, options)};
  });
}

size_t gxyt_result_series_count(const gxyt_result* result) {
  return result ? result->impl.series.size() : 0;
}

size_t gxyt_result_skipped_empty(const gxyt_result* result) {
  return result ? result->impl.skipped_empty : 0;
}

gxyt_status gxyt_result_series_info(const gxyt_result* result, size_t index,
                                    const char** trace_id,
                                    const char** frame_id,
                                    const char** event_label,
                                    size_t* point_count) {
  return guarded([&] {
    require(result, "result");
    if (index >= result->impl.series.size()) {
      throw gpsxyt::Error(gpsxyt::ErrorCode::InvalidArgument,
                          "series index out of range");
    }
    const auto& s = result->impl.series[index];
    if (trace_id) *trace_id = s.trace_id().c_str();
    if (frame_id) *frame_id = s.frame_id().c_str();
    if (event_label) *event_label = s.event_label().c_str();
    if (point_count) *point_count = s.points().size();
  });
}

gxyt_status gxyt_result_series_points(const gxyt_result* result, size_t index,
                                      double* xyt, size_t capacity) {
  return guarded([&] {
    require(result && (xyt || capacity == 0), "result and xyt");
    if (index >= result->impl.series.size()) {
      throw gpsxyt::Error(gpsxyt::ErrorCode::InvalidArgument,
                          "series index out of range");
    }
    const auto& pts = result->impl.series[index].points();
    for (size_t i = 0; i < pts.size() && i < capacity; ++i) {
      xyt[3 * i] = pts[i].x_m;
      xyt[3 * i + 1] = pts[i].y_m;
      xyt[3 * i + 2] = pts[i].t_s;
    }
  });
}

gxyt_status gxyt_result_write_csv(const gxyt_result* result,
                                  const char* out_dir, unsigned jobs,
                                  size_t* files_written) {
  return guarded([&] {
    require(result && out_dir, "result and out_dir");
    gpsxyt::OutputLayout layout(out_dir);
    const auto paths = gpsxyt::write_all_csv(result->impl.series, layout, jobs);
    if (files_written) *files_written = paths.size();
  });
}

gxyt_status gxyt_result_write_svg(const gxyt_result* result, const char* path) {
  return guarded([&] {
    require(result && path, "result and path");
    gpsxyt::write_overlay_svg(result->impl.series, path);
  });
}

void gxyt_result_destroy(gxyt_result* result) { delete result; }

}  // extern "C"
