#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gpsxyt/model.hpp"

namespace gpsxyt {

struct Warning {
  std::string source;
  std::string message;
};

using Warnings = std::vector<Warning>;

struct IngestReport {
  std::size_t traces_loaded = 0;
  std::size_t frames_loaded = 0;
  std::size_t events_loaded = 0;
  Warnings warnings;
};

// "<start>/<end>" with two explicit date-times; duration forms are rejected.
// Offset-less endpoints are read as UTC and reported through `warnings`.
// Throws MalformedInterval or ReversedInterval.
EventInterval parse_interval(std::string_view text, std::string label = {},
                             Warnings* warnings = nullptr);

// Canonical "<start>Z/<end>Z" form accepted back by parse_interval.
std::string format_interval(const EventInterval& interval);

// Reads a GeoJSON FeatureCollection of two-point LineStrings. Coordinates
// are [lon, lat] as in RFC 7946. Events come from an "events" array (labels
// e0, e1, ...) followed by any other string property that parses as an
// interval (labelled by the property name). Frames keep document order.
//
// Throws NotFeatureCollection, BadLineString, CoincidentPoints, NoEvents,
// MalformedInterval and ReversedInterval, each naming the feature.
std::vector<Frame> parse_frames(std::string_view geojson_text,
                                Warnings* warnings = nullptr,
                                const Ellipsoid& ellipsoid = Ellipsoid::wgs84());

// Flattens every trk/trkseg/trkpt of a GPX 1.0/1.1 document into one trace.
// Points without a usable <time> are skipped with a warning.
// Throws MalformedXml or NoTimedPoints.
Trace parse_gpx(std::string_view gpx_text, std::string id,
                Warnings* warnings = nullptr);

struct LoadedInputs {
  std::vector<Frame> frames;  // document order
  std::vector<Trace> traces;  // sorted by id
  IngestReport report;
};

// Loads the frames file and every *.gpx (any case) in `traces_dir`. A GPX
// file that fails to parse becomes a warning. Trace ids are file stems,
// suffixed "-2", "-3", ... on collision in path order.
//
// Throws FramesFileUnreadable, TracesDirUnreadable, NoTraces, plus any
// parse_frames error.
LoadedInputs load_inputs(const std::filesystem::path& frames_path,
                         const std::filesystem::path& traces_dir,
                         bool recurse = false);

}  // namespace gpsxyt
