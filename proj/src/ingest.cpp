#include "gpsxyt/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "gpsxyt/error.hpp"
#include "gpsxyt/time_format.hpp"

namespace gpsxyt {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Returns `base`, or `base-2`, `base-3`, ... whichever is not yet in `used`,
// and records it.
std::string unique_name(const std::string& base, std::set<std::string>& used) {
  std::string name = base;
  for (int n = 2; used.count(name) != 0; ++n) {
    name = base + "-" + std::to_string(n);
  }
  used.insert(name);
  return name;
}

void warn(Warnings* warnings, std::string source, std::string message) {
  if (warnings) warnings->push_back({std::move(source), std::move(message)});
}

}  // namespace

// ---------------------------------------------------------------------------
// Intervals

EventInterval parse_interval(std::string_view text, std::string label,
                             Warnings* warnings) {
  const std::string quoted = "\"" + std::string(text) + "\"";
  const auto slash = text.find('/');
  if (slash == std::string_view::npos ||
      text.find('/', slash + 1) != std::string_view::npos) {
    throw Error(ErrorCode::MalformedInterval,
                "interval " + quoted + " is not of the form <start>/<end>");
  }
  const std::string_view start_text = trim(text.substr(0, slash));
  const std::string_view end_text = trim(text.substr(slash + 1));
  for (auto side : {start_text, end_text}) {
    if (!side.empty() && (side.front() == 'P' || side.front() == 'p')) {
      throw Error(ErrorCode::MalformedInterval,
                  "interval " + quoted +
                      " uses a duration; only <start>/<end> date-times are "
                      "supported");
    }
  }
  const auto start = parse_datetime(start_text);
  const auto end = parse_datetime(end_text);
  if (!start || !end) {
    throw Error(ErrorCode::MalformedInterval,
                "interval " + quoted + " has an unparseable " +
                    (start ? "end" : "start") + " date-time");
  }
  if (end->time < start->time) {
    throw Error(ErrorCode::ReversedInterval,
                "interval " + quoted + " ends before it begins");
  }
  if (!start->has_offset || !end->has_offset) {
    warn(warnings, label.empty() ? std::string("interval") : label,
         "interval " + quoted + " has no UTC offset; interpreted as UTC");
  }
  return {start->time, end->time, std::move(label)};
}

std::string format_interval(const EventInterval& interval) {
  return format_instant(interval.begin_utc()) + "/" +
         format_instant(interval.end_utc());
}

// ---------------------------------------------------------------------------
// GeoJSON frames

namespace {

using Json = nlohmann::ordered_json;

std::string feature_id(const Json& feature, std::size_t index) {
  if (auto it = feature.find("id"); it != feature.end()) {
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return it->dump();
    if (it->is_number()) return it->dump();
  }
  if (auto props = feature.find("properties");
      props != feature.end() && props->is_object()) {
    if (auto name = props->find("name");
        name != props->end() && name->is_string() &&
        !name->get<std::string>().empty()) {
      return name->get<std::string>();
    }
  }
  return "f" + std::to_string(index);
}

LatLon read_position(const Json& position, const std::string& context) {
  if (!position.is_array() || position.size() < 2 || !position[0].is_number() ||
      !position[1].is_number()) {
    throw Error(ErrorCode::BadLineString,
                context + ": position is not a [lon, lat] number pair");
  }
  const double lon = position[0].get<double>();
  const double lat = position[1].get<double>();
  if (!std::isfinite(lon) || !std::isfinite(lat) || std::abs(lat) > 90.0) {
    throw Error(ErrorCode::BadLineString,
                context + ": position [" + position[0].dump() + ", " +
                    position[1].dump() + "] is out of range");
  }
  return {lat, lon};
}

std::vector<EventInterval> read_events(const Json& feature,
                                       const std::string& context,
                                       Warnings* warnings) {
  std::vector<EventInterval> events;
  auto props = feature.find("properties");
  if (props == feature.end() || !props->is_object()) return events;

  if (auto list = props->find("events");
      list != props->end() && list->is_array()) {
    for (std::size_t k = 0; k < list->size(); ++k) {
      const std::string label = "e" + std::to_string(k);
      const Json& item = (*list)[k];
      if (!item.is_string()) {
        throw Error(ErrorCode::MalformedInterval,
                    context + ": events[" + std::to_string(k) +
                        "] is not a string");
      }
      try {
        events.push_back(
            parse_interval(item.get<std::string>(), label, warnings));
      } catch (const Error& e) {
        throw e.with_context(context + ": events[" + std::to_string(k) + "]");
      }
    }
  }

  for (const auto& [key, value] : props->items()) {
    if (!value.is_string()) continue;
    try {
      events.push_back(parse_interval(value.get<std::string>(), key, warnings));
    } catch (const Error& e) {
      // Ordinary string properties (names, notes) are not intervals; a
      // well-formed but reversed one is an authoring mistake.
      if (e.code() == ErrorCode::ReversedInterval) {
        throw e.with_context(context + ": property \"" + key + "\"");
      }
    }
  }
  return events;
}

}  // namespace

std::vector<Frame> parse_frames(std::string_view geojson_text,
                                Warnings* warnings,
                                const Ellipsoid& ellipsoid) {
  Json root;
  try {
    root = Json::parse(geojson_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::NotFeatureCollection,
                std::string("frames are not valid JSON: ") + e.what());
  }
  if (!root.is_object() || root.value("type", Json()) != "FeatureCollection" ||
      !root.contains("features") || !root["features"].is_array()) {
    throw Error(ErrorCode::NotFeatureCollection,
                "frames document is not a GeoJSON FeatureCollection");
  }

  std::vector<Frame> frames;
  std::set<std::string> used_ids;
  const Json& features = root["features"];
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Json& feature = features[i];
    const std::string where = "features[" + std::to_string(i) + "]";
    if (!feature.is_object() || feature.value("type", Json()) != "Feature") {
      warn(warnings, where, "not a Feature; ignored");
      continue;
    }
    const std::string id = feature_id(feature, i);
    const std::string context = "feature \"" + id + "\" (" + where + ")";

    const Json geometry = feature.value("geometry", Json());
    if (!geometry.is_object() || geometry.value("type", Json()) != "LineString") {
      warn(warnings, context, "geometry is not a LineString; ignored");
      continue;
    }
    const Json coords = geometry.value("coordinates", Json());
    if (!coords.is_array() || coords.size() != 2) {
      throw Error(ErrorCode::BadLineString,
                  context + ": LineString has " +
                      std::to_string(coords.is_array() ? coords.size() : 0) +
                      " positions; a frame line needs exactly 2");
    }
    const LatLon origin = read_position(coords[0], context);
    const LatLon target = read_position(coords[1], context);

    Warnings event_warnings;
    std::vector<EventInterval> events =
        read_events(feature, context, &event_warnings);
    for (auto& w : event_warnings) {
      warn(warnings, context + " " + w.source, std::move(w.message));
    }
    if (events.empty()) {
      throw Error(ErrorCode::NoEvents,
                  context + ": no property holds a <start>/<end> interval");
    }

    const std::string unique = unique_name(id, used_ids);
    if (unique != id) {
      warn(warnings, context, "duplicate frame id; renamed to \"" + unique + "\"");
    }
    try {
      frames.push_back({FrameLine(unique, origin, target, ellipsoid),
                        std::move(events)});
    } catch (const Error& e) {
      throw e.with_context(context);
    }
  }
  return frames;
}

// ---------------------------------------------------------------------------
// GPX traces

namespace {

namespace pt = boost::property_tree;

std::string_view local_name(std::string_view tag) {
  const auto colon = tag.rfind(':');
  return colon == std::string_view::npos ? tag : tag.substr(colon + 1);
}

std::optional<double> parse_double(std::string_view text) {
  const std::string s(trim(text));
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

Trace parse_gpx(std::string_view gpx_text, std::string id, Warnings* warnings) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(gpx_text)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedXml,
                "malformed XML: " + e.message() + " (line " +
                    std::to_string(e.line()) + ")");
  }

  const pt::ptree* gpx = nullptr;
  std::string root_name;
  for (const auto& [tag, child] : doc) {
    if (tag == "<xmlcomment>") continue;
    root_name = tag;
    if (local_name(tag) == "gpx") gpx = &child;
    break;
  }
  if (!gpx) {
    throw Error(ErrorCode::MalformedXml,
                root_name.empty() ? std::string("document has no root element")
                                  : "root element is <" + root_name +
                                        ">, expected <gpx>");
  }

  std::vector<GeoPoint> points;
  std::size_t untimed = 0, bad_time = 0, bad_position = 0;
  for (const auto& [trk_tag, trk] : *gpx) {
    if (local_name(trk_tag) != "trk") continue;
    for (const auto& [seg_tag, seg] : trk) {
      if (local_name(seg_tag) != "trkseg") continue;
      for (const auto& [pt_tag, trkpt] : seg) {
        if (local_name(pt_tag) != "trkpt") continue;
        const auto lat = parse_double(trkpt.get("<xmlattr>.lat", ""));
        const auto lon = parse_double(trkpt.get("<xmlattr>.lon", ""));
        if (!lat || !lon || std::abs(*lat) > 90.0) {
          ++bad_position;
          continue;
        }
        const pt::ptree* time_node = nullptr;
        for (const auto& [tag, child] : trkpt) {
          if (local_name(tag) == "time") {
            time_node = &child;
            break;
          }
        }
        if (!time_node) {
          ++untimed;
          continue;
        }
        const auto when = parse_datetime(trim(time_node->data()));
        if (!when) {
          ++bad_time;
          continue;
        }
        points.emplace_back(*lat, *lon, when->time);
      }
    }
  }

  if (untimed) {
    warn(warnings, id,
         std::to_string(untimed) + " track point(s) without <time> skipped");
  }
  if (bad_time) {
    warn(warnings, id,
         std::to_string(bad_time) +
             " track point(s) with an unparseable <time> skipped");
  }
  if (bad_position) {
    warn(warnings, id,
         std::to_string(bad_position) +
             " track point(s) with invalid lat/lon skipped");
  }
  if (points.empty()) {
    throw Error(ErrorCode::NoTimedPoints,
                "no timestamped track points; nothing can be matched to events");
  }
  return Trace(std::move(id), std::move(points));
}

// ---------------------------------------------------------------------------
// Directory loading

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

bool has_gpx_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".gpx";
}

std::vector<std::filesystem::path> list_gpx_files(
    const std::filesystem::path& dir, bool recurse) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  auto consider = [&](const fs::directory_entry& entry) {
    std::error_code type_ec;
    if (entry.is_regular_file(type_ec) && has_gpx_extension(entry.path())) {
      files.push_back(entry.path());
    }
  };
  if (recurse) {
    for (fs::recursive_directory_iterator it(
             dir, fs::directory_options::skip_permission_denied, ec), end;
         !ec && it != end; it.increment(ec)) {
      consider(*it);
    }
  } else {
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end;
         it.increment(ec)) {
      consider(*it);
    }
  }
  if (ec) {
    throw Error(ErrorCode::TracesDirUnreadable,
                dir.string() + ": " + ec.message());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

LoadedInputs load_inputs(const std::filesystem::path& frames_path,
                         const std::filesystem::path& traces_dir,
                         bool recurse) {
  LoadedInputs out;
  Warnings& warnings = out.report.warnings;

  const auto frames_text = read_file(frames_path);
  if (!frames_text) {
    throw Error(ErrorCode::FramesFileUnreadable,
                frames_path.string() + ": cannot read frames file");
  }
  {
    Warnings frame_warnings;
    try {
      out.frames = parse_frames(*frames_text, &frame_warnings);
    } catch (const Error& e) {
      throw e.with_context(frames_path.string());
    }
    for (auto& w : frame_warnings) {
      warnings.push_back({frames_path.string() + ": " + w.source,
                          std::move(w.message)});
    }
  }
  if (out.frames.empty()) {
    warnings.push_back({frames_path.string(), "no frame lines found"});
  }

  std::error_code ec;
  if (!std::filesystem::is_directory(traces_dir, ec)) {
    throw Error(ErrorCode::TracesDirUnreadable,
                traces_dir.string() + ": not a readable directory");
  }
  const auto files = list_gpx_files(traces_dir, recurse);
  if (files.empty()) {
    throw Error(ErrorCode::NoTraces,
                traces_dir.string() + ": no .gpx files found");
  }

  std::set<std::string> used_ids;
  for (const auto& file : files) {
    const auto text = read_file(file);
    if (!text) {
      warnings.push_back({file.string(), "cannot read file; skipped"});
      continue;
    }
    Warnings file_warnings;
    const std::string stem = file.stem().string();
    std::optional<Trace> trace;
    try {
      trace.emplace(parse_gpx(*text, stem.empty() ? "trace" : stem,
                              &file_warnings));
    } catch (const Error& e) {
      warnings.push_back({file.string(), std::string(error_name(e.code())) +
                                             ": " + e.what() + "; skipped"});
    }
    for (auto& w : file_warnings) {
      warnings.push_back({file.string(), std::move(w.message)});
    }
    if (!trace) continue;
    const std::string id = unique_name(trace->id(), used_ids);
    out.traces.emplace_back(id, trace->points());
  }
  std::sort(out.traces.begin(), out.traces.end(),
            [](const Trace& a, const Trace& b) { return a.id() < b.id(); });

  out.report.traces_loaded = out.traces.size();
  out.report.frames_loaded = out.frames.size();
  for (const auto& f : out.frames) out.report.events_loaded += f.events.size();
  return out;
}

}  // namespace gpsxyt
