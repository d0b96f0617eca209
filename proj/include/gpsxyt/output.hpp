#pragma once

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpsxyt/model.hpp"

namespace gpsxyt {

// Maps every byte outside [A-Za-z0-9_-] to '_'.
std::string sanitize_component(std::string_view text);

// Shortest decimal that parses back to exactly `value`.
std::string format_number(double value);

// Hands out "<trace>__<frame>__<event>.csv" names inside one directory,
// suffixing "-2", "-3", ... when two series sanitize to the same name.
// Names depend only on the order of requests.
class OutputLayout {
 public:
  explicit OutputLayout(std::filesystem::path out_dir);

  const std::filesystem::path& out_dir() const { return out_dir_; }
  std::filesystem::path path_for(const EventSeries& series);

 private:
  std::filesystem::path out_dir_;
  std::set<std::string> used_;
};

// "x,y,t\n" followed by one row per point, LF endings.
std::string csv_text(const EventSeries& series);

// Creates the output directory if needed. Throws IoError naming the path.
std::filesystem::path write_csv(const EventSeries& series,
                                OutputLayout& layout);

// Writes one file per series, in parallel when jobs > 1. Names are assigned
// in series order before any file is written.
std::vector<std::filesystem::path> write_all_csv(
    std::span<const EventSeries> series, OutputLayout& layout,
    unsigned jobs = 1);

// Overlay of all series in the shared local frame, y up, equal axis scale,
// one polyline per series coloured by frame. Throws NoSeries when empty.
std::string render_overlay_svg(std::span<const EventSeries> series);

std::filesystem::path write_overlay_svg(std::span<const EventSeries> series,
                                        const std::filesystem::path& path);

}  // namespace gpsxyt
