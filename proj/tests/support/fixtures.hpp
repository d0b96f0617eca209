#pragma once

// Shared helpers for building synthetic inputs in tests.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpsxyt/model.hpp"
#include "gpsxyt/time_format.hpp"

namespace gpsxyt::testing {

inline nlohmann::json load_oracle() {
  std::ifstream in(std::string(GPSXYT_TEST_DATA_DIR) + "/oracle.json");
  return nlohmann::json::parse(in);
}

// 2017-06-10T05:00:00Z plus an offset in seconds.
inline Instant at(double seconds_after_base) {
  using namespace std::chrono;
  const Instant base = sys_days{year{2017} / 6 / 10} + hours{5};
  return base + duration_cast<microseconds>(duration<double>(seconds_after_base));
}

struct Fix {
  double lat;
  double lon;
  Instant time;
};

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

// GPX 1.1 document; `segments` each become one <trkseg>.
inline std::string make_gpx(const std::vector<std::vector<Fix>>& segments) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gpx version=\"1.1\" creator=\"test\" "
         "xmlns=\"http://www.topografix.com/GPX/1/1\">\n<trk><name>t</name>\n";
  for (const auto& seg : segments) {
    out << "<trkseg>\n";
    for (const auto& f : seg) {
      out << "<trkpt lat=\"" << fmt(f.lat) << "\" lon=\"" << fmt(f.lon)
          << "\"><ele>10</ele><time>" << format_instant(f.time)
          << "</time></trkpt>\n";
    }
    out << "</trkseg>\n";
  }
  out << "</trk>\n</gpx>\n";
  return out.str();
}

struct FrameSpec {
  std::string id;
  double lat1, lon1, lat2, lon2;
  std::vector<std::string> events;  // interval strings
};

inline std::string make_geojson(const std::vector<FrameSpec>& frames) {
  nlohmann::ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = nlohmann::ordered_json::array();
  for (const auto& f : frames) {
    nlohmann::ordered_json feat;
    feat["type"] = "Feature";
    if (!f.id.empty()) feat["id"] = f.id;
    feat["geometry"] = {{"type", "LineString"},
                        {"coordinates", {{f.lon1, f.lat1}, {f.lon2, f.lat2}}}};
    feat["properties"] = {{"events", f.events}};
    fc["features"].push_back(feat);
  }
  return fc.dump(1);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("gpsxyt-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace gpsxyt::testing
