#include "gpsxyt/output.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include "gpsxyt/error.hpp"

namespace gpsxyt {

namespace fs = std::filesystem;

std::string sanitize_component(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    const bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                      (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!keep) c = '_';
  }
  return out;
}

std::string format_number(double value) {
  std::array<char, 32> buf;
  if (value == 0) value = 0.0;  // no "-0"
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

OutputLayout::OutputLayout(fs::path out_dir) : out_dir_(std::move(out_dir)) {}

fs::path OutputLayout::path_for(const EventSeries& series) {
  const std::string base = sanitize_component(series.trace_id()) + "__" +
                           sanitize_component(series.frame_id()) + "__" +
                           sanitize_component(series.event_label());
  std::string name = base;
  for (int n = 2; used_.count(name) != 0; ++n) {
    name = base + "-" + std::to_string(n);
  }
  used_.insert(name);
  return out_dir_ / (name + ".csv");
}

std::string csv_text(const EventSeries& series) {
  std::string out = "x,y,t\n";
  for (const LocalPoint& p : series.points()) {
    out += format_number(p.x_m);
    out += ',';
    out += format_number(p.y_m);
    out += ',';
    out += format_number(p.t_s);
    out += '\n';
  }
  return out;
}

namespace {

void ensure_directory(const fs::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::IoError,
                dir.string() + ": cannot create directory" +
                    (ec ? ": " + ec.message() : std::string()));
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

}  // namespace

fs::path write_csv(const EventSeries& series, OutputLayout& layout) {
  ensure_directory(layout.out_dir());
  const fs::path path = layout.path_for(series);
  write_text(path, csv_text(series));
  return path;
}

std::vector<fs::path> write_all_csv(std::span<const EventSeries> series,
                                    OutputLayout& layout, unsigned jobs) {
  ensure_directory(layout.out_dir());
  std::vector<fs::path> paths;
  paths.reserve(series.size());
  for (const EventSeries& s : series) paths.push_back(layout.path_for(s));

  std::vector<std::exception_ptr> failures(series.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < series.size();) {
      try {
        write_text(paths[i], csv_text(series[i]));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, series.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return paths;
}

// ---------------------------------------------------------------------------
// SVG overlay

namespace {

constexpr std::array<std::string_view, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  // At least 1 m wide, then 5% of the width added on each side.
  void pad() {
    constexpr double kMinSpan = 1.0;
    if (hi - lo < kMinSpan) {
      const double mid = (lo + hi) / 2;
      lo = mid - kMinSpan / 2;
      hi = mid + kMinSpan / 2;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }

  double span() const { return hi - lo; }
};

}  // namespace

std::string render_overlay_svg(std::span<const EventSeries> series) {
  if (series.empty()) {
    throw Error(ErrorCode::NoSeries, "no event series to plot");
  }
  Range xr, yr;
  for (const auto& s : series) {
    for (const auto& p : s.points()) {
      xr.add(p.x_m);
      yr.add(p.y_m);
    }
  }
  xr.pad();
  yr.pad();

  std::map<std::string, std::string_view> colour;
  for (const auto& s : series) colour.emplace(s.frame_id(), "");
  std::size_t k = 0;
  for (auto& [id, c] : colour) c = kPalette[k++ % kPalette.size()];

  constexpr double kWidth = 800;
  constexpr double kRow = 18;
  const double plot_h =
      std::clamp(kWidth * yr.span() / xr.span(), 100.0, 2000.0);
  const double total_h = plot_h + kRow * (series.size() + 1);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         format_number(kWidth) + "\" height=\"" + format_number(total_h) +
         "\" viewBox=\"0 0 " + format_number(kWidth) + " " +
         format_number(total_h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Plot area in meters; SVG y grows downward, so local y is negated.
  svg += "<svg x=\"0\" y=\"0\" width=\"" + format_number(kWidth) +
         "\" height=\"" + format_number(plot_h) + "\" viewBox=\"" +
         format_number(xr.lo) + " " + format_number(-yr.hi) + " " +
         format_number(xr.span()) + " " + format_number(yr.span()) +
         "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  svg += "<g stroke=\"#cccccc\" vector-effect=\"non-scaling-stroke\">\n";
  svg += "<line x1=\"" + format_number(xr.lo) + "\" y1=\"0\" x2=\"" +
         format_number(xr.hi) +
         "\" y2=\"0\" vector-effect=\"non-scaling-stroke\"/>\n";
  svg += "<line x1=\"0\" y1=\"" + format_number(-yr.hi) + "\" x2=\"0\" y2=\"" +
         format_number(-yr.lo) +
         "\" vector-effect=\"non-scaling-stroke\"/>\n";
  svg += "</g>\n";
  svg += "<g fill=\"none\" stroke-width=\"1.5\" stroke-linejoin=\"round\">\n";
  for (const auto& s : series) {
    svg += "<polyline stroke=\"" + std::string(colour[s.frame_id()]) +
           "\" vector-effect=\"non-scaling-stroke\" points=\"";
    bool first = true;
    for (const auto& p : s.points()) {
      if (!first) svg += ' ';
      first = false;
      svg += format_number(p.x_m) + "," + format_number(-p.y_m + 0.0);
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n</svg>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double row_y = plot_h + kRow;
  for (const auto& s : series) {
    svg += "<rect x=\"10\" y=\"" + format_number(row_y - 10) +
           "\" width=\"12\" height=\"12\" fill=\"" +
           std::string(colour[s.frame_id()]) + "\"/>";
    svg += "<text x=\"28\" y=\"" + format_number(row_y) + "\">" +
           xml_escape(s.trace_id() + " / " + s.frame_id() + " / " +
                      s.event_label()) +
           "</text>\n";
    row_y += kRow;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

fs::path write_overlay_svg(std::span<const EventSeries> series,
                           const fs::path& path) {
  const std::string text = render_overlay_svg(series);
  ensure_directory(path.parent_path());
  write_text(path, text);
  return path;
}

}  // namespace gpsxyt
