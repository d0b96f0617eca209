/*
 * gpsxyt C API.
 *
 * Reprojects GPS traces into local x,y,t coordinates relative to reference
 * frames: directed two-point lines carrying event time intervals.
 *
 * Conventions:
 *  - Every fallible call returns a gxyt_status. On failure,
 *    gxyt_last_error_message() returns a description for the calling thread
 *    that stays valid until that thread's next failing call.
 *  - Angles are degrees, distances meters, instants microseconds since the
 *    Unix epoch (UTC).
 *  - Objects are opaque; each *_create / *_load / gxyt_run result must be
 *    released with the matching *_destroy. Destroy functions accept NULL.
 *  - Strings returned by accessors are owned by the object they came from.
 */
#ifndef GPSXYT_H
#define GPSXYT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GPSXYT_BUILDING)
#    define GXYT_API __declspec(dllexport)
#  else
#    define GXYT_API __declspec(dllimport)
#  endif
#else
#  define GXYT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gxyt_status {
  GXYT_OK = 0,
  GXYT_ERR_INVALID_ARGUMENT = 1,
  GXYT_ERR_COINCIDENT_POINTS = 2,
  GXYT_ERR_NEAR_ANTIPODAL = 3,
  GXYT_ERR_POLAR_ORIGIN = 4,
  GXYT_ERR_OUT_OF_DOMAIN = 5,
  GXYT_ERR_MALFORMED_INTERVAL = 6,
  GXYT_ERR_REVERSED_INTERVAL = 7,
  GXYT_ERR_NOT_FEATURE_COLLECTION = 8,
  GXYT_ERR_BAD_LINESTRING = 9,
  GXYT_ERR_NO_EVENTS = 10,
  GXYT_ERR_MALFORMED_XML = 11,
  GXYT_ERR_NO_TIMED_POINTS = 12,
  GXYT_ERR_FRAMES_FILE_UNREADABLE = 13,
  GXYT_ERR_TRACES_DIR_UNREADABLE = 14,
  GXYT_ERR_NO_TRACES = 15,
  GXYT_ERR_IO = 16,
  GXYT_ERR_NO_SERIES = 17,
  GXYT_ERR_INTERNAL = 99
} gxyt_status;

typedef struct gxyt_ellipsoid {
  double semi_major_axis_m;
  double flattening;
} gxyt_ellipsoid;

typedef struct gxyt_projection gxyt_projection;
typedef struct gxyt_inputs gxyt_inputs;
typedef struct gxyt_result gxyt_result;

GXYT_API const char* gxyt_version(void);
/* Stable identifier such as "BadLineString"; never NULL. */
GXYT_API const char* gxyt_status_name(gxyt_status status);
GXYT_API const char* gxyt_last_error_message(void);

GXYT_API gxyt_ellipsoid gxyt_wgs84(void);

/* Geodesy. `ellipsoid` may be NULL for WGS84. */
GXYT_API gxyt_status gxyt_geodesic_inverse(const gxyt_ellipsoid* ellipsoid,
                                           double lat1, double lon1,
                                           double lat2, double lon2,
                                           double* azimuth_deg,
                                           double* distance_m);

GXYT_API gxyt_status gxyt_projection_create(const gxyt_ellipsoid* ellipsoid,
                                            double origin_lat,
                                            double origin_lon,
                                            double azimuth_deg,
                                            gxyt_projection** out);
GXYT_API gxyt_status gxyt_projection_forward(const gxyt_projection* projection,
                                             double lat, double lon,
                                             double* x_m, double* y_m);
GXYT_API gxyt_status gxyt_projection_inverse(const gxyt_projection* projection,
                                             double x_m, double y_m,
                                             double* lat, double* lon);
GXYT_API void gxyt_projection_destroy(gxyt_projection* projection);

/* "<start>/<end>" ISO 8601 interval. */
GXYT_API gxyt_status gxyt_parse_interval(const char* text, int64_t* begin_us,
                                         int64_t* end_us);

/* Inputs: frames plus traces, either loaded from disk or added as text. */
GXYT_API gxyt_status gxyt_inputs_load(const char* frames_path,
                                      const char* traces_dir, int recurse,
                                      gxyt_inputs** out);
GXYT_API gxyt_status gxyt_inputs_create(gxyt_inputs** out);
/* Appends the frames of a GeoJSON document. */
GXYT_API gxyt_status gxyt_inputs_add_frames_geojson(gxyt_inputs* inputs,
                                                    const char* geojson);
/* Adds one trace parsed from GPX text under `id`. */
GXYT_API gxyt_status gxyt_inputs_add_trace_gpx(gxyt_inputs* inputs,
                                               const char* gpx,
                                               const char* id);
GXYT_API size_t gxyt_inputs_trace_count(const gxyt_inputs* inputs);
GXYT_API size_t gxyt_inputs_frame_count(const gxyt_inputs* inputs);
GXYT_API size_t gxyt_inputs_event_count(const gxyt_inputs* inputs);
GXYT_API size_t gxyt_inputs_warning_count(const gxyt_inputs* inputs);
/* "<source>: <message>", or NULL when index is out of range. */
GXYT_API const char* gxyt_inputs_warning(const gxyt_inputs* inputs,
                                         size_t index);
GXYT_API void gxyt_inputs_destroy(gxyt_inputs* inputs);

/* Runs every trace x frame x event permutation. jobs = 0 uses all cores. */
GXYT_API gxyt_status gxyt_run(const gxyt_inputs* inputs, unsigned jobs,
                              gxyt_result** out);
GXYT_API size_t gxyt_result_series_count(const gxyt_result* result);
GXYT_API size_t gxyt_result_skipped_empty(const gxyt_result* result);
/* Any of the out pointers may be NULL. */
GXYT_API gxyt_status gxyt_result_series_info(const gxyt_result* result,
                                             size_t index,
                                             const char** trace_id,
                                             const char** frame_id,
                                             const char** event_label,
                                             size_t* point_count);
/* Copies up to `capacity` points as interleaved x,y,t triples into
 * `xyt` (3 * capacity doubles). */
GXYT_API gxyt_status gxyt_result_series_points(const gxyt_result* result,
                                               size_t index, double* xyt,
                                               size_t capacity);
/* One "<trace>__<frame>__<event>.csv" per series; creates out_dir. */
GXYT_API gxyt_status gxyt_result_write_csv(const gxyt_result* result,
                                           const char* out_dir, unsigned jobs,
                                           size_t* files_written);
GXYT_API gxyt_status gxyt_result_write_svg(const gxyt_result* result,
                                           const char* path);
GXYT_API void gxyt_result_destroy(gxyt_result* result);

#ifdef __cplusplus
}
#endif

#endif /* GPSXYT_H */
