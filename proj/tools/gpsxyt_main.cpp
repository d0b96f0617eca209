// gpsxyt: reproject a directory of GPX traces into local x,y,t series, one
// CSV per (trace, frame, event) with points in the event interval.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 run/output error.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gpsxyt/gpsxyt.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIngest = 2, kRun = 3 };

struct InputsDeleter {
  void operator()(gxyt_inputs* p) const { gxyt_inputs_destroy(p); }
};
struct ResultDeleter {
  void operator()(gxyt_result* p) const { gxyt_result_destroy(p); }
};

int report(gxyt_status status, int exit_code) {
  std::fprintf(stderr, "gpsxyt: error: %s: %s\n", gxyt_status_name(status),
               gxyt_last_error_message());
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproject GPS traces into x,y,t relative to reference frames",
               "gpsxyt"};
  std::string frames_path, traces_dir, out_dir, plot_path;
  bool recurse = false;
  int verbosity = 0;
  unsigned jobs = 0;

  app.add_option("--frames", frames_path,
                 "GeoJSON FeatureCollection of two-point frame lines")
      ->required();
  app.add_option("--traces", traces_dir, "Directory of .gpx traces")
      ->required();
  app.add_option("--out", out_dir, "Output directory (created if absent)")
      ->required();
  app.add_flag("--recurse", recurse, "Search the traces directory recursively");
  app.add_option("--plot", plot_path, "Also write an SVG overlay of all series");
  app.add_flag("-v,--verbose", verbosity, "More diagnostics on stderr");
  app.add_option("--jobs", jobs, "Worker threads (0 = one per core)")
      ->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", gxyt_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "gpsxyt: %s\n\n%s", e.what(), app.help().c_str());
    return kUsage;
  }

  gxyt_inputs* raw_inputs = nullptr;
  if (auto st = gxyt_inputs_load(frames_path.c_str(), traces_dir.c_str(),
                                 recurse ? 1 : 0, &raw_inputs);
      st != GXYT_OK) {
    return report(st, kIngest);
  }
  std::unique_ptr<gxyt_inputs, InputsDeleter> inputs(raw_inputs);

  const size_t warnings = gxyt_inputs_warning_count(inputs.get());
  for (size_t i = 0; i < warnings; ++i) {
    std::fprintf(stderr, "gpsxyt: warning: %s\n",
                 gxyt_inputs_warning(inputs.get(), i));
  }
  if (verbosity > 0) {
    std::fprintf(stderr, "gpsxyt: loaded %zu trace(s), %zu frame(s), %zu event(s)\n",
                 gxyt_inputs_trace_count(inputs.get()),
                 gxyt_inputs_frame_count(inputs.get()),
                 gxyt_inputs_event_count(inputs.get()));
  }

  gxyt_result* raw_result = nullptr;
  if (auto st = gxyt_run(inputs.get(), jobs, &raw_result); st != GXYT_OK) {
    return report(st, kRun);
  }
  std::unique_ptr<gxyt_result, ResultDeleter> result(raw_result);

  size_t written = 0;
  if (auto st = gxyt_result_write_csv(result.get(), out_dir.c_str(), jobs,
                                      &written);
      st != GXYT_OK) {
    return report(st, kRun);
  }
  if (verbosity > 1) {
    for (size_t i = 0; i < gxyt_result_series_count(result.get()); ++i) {
      const char *trace, *frame, *event;
      size_t n = 0;
      gxyt_result_series_info(result.get(), i, &trace, &frame, &event, &n);
      std::fprintf(stderr, "gpsxyt: %s / %s / %s: %zu point(s)\n", trace,
                   frame, event, n);
    }
  }
  if (!plot_path.empty()) {
    if (auto st = gxyt_result_write_svg(result.get(), plot_path.c_str());
        st != GXYT_OK) {
      return report(st, kRun);
    }
  }

  std::printf("%zu series written, %zu permutations skipped (empty), %zu warnings\n",
              written, gxyt_result_skipped_empty(result.get()), warnings);
  return kOk;
}
