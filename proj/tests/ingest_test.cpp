#include <gtest/gtest.h>

#include "gpsxyt/error.hpp"
#include "gpsxyt/ingest.hpp"
#include "support/fixtures.hpp"

namespace gpsxyt {
namespace {

using testing::at;
using testing::Fix;
using testing::make_gpx;
using testing::TempDir;
using testing::write_file;

constexpr const char* kRound1 = "2017-06-10T05:00:00Z/2017-06-10T05:20:00Z";
constexpr const char* kRound2 = "2017-06-10T05:30:00Z/2017-06-10T05:50:00Z";

template <typename F>
Error error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no gpsxyt::Error thrown";
  return Error(ErrorCode::InvalidArgument, "none");
}

std::string feature(const std::string& props,
                    const std::string& coords = "[[145.0,-37.85],[145.001,-37.84]]",
                    const std::string& extra = "") {
  return R"({"type":"Feature")" + extra +
         R"(,"geometry":{"type":"LineString","coordinates":)" + coords +
         R"(},"properties":)" + props + "}";
}

std::string collection(const std::string& features) {
  return R"({"type":"FeatureCollection","features":[)" + features + "]}";
}

// --- parse_frames -----------------------------------------------------------

TEST(ParseFrames, EventsArray) {
  auto frames = parse_frames(
      collection(feature(std::string(R"({"events":[")") + kRound1 + "\"]}")));
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].line.id(), "f0");
  ASSERT_EQ(frames[0].events.size(), 1u);
  EXPECT_EQ(frames[0].events[0].label(), "e0");
  EXPECT_EQ(frames[0].events[0].duration_s(), 1200.0);
  // GeoJSON order is [lon, lat].
  EXPECT_EQ(frames[0].line.origin().lat_deg, -37.85);
  EXPECT_EQ(frames[0].line.origin().lon_deg, 145.0);
  EXPECT_GT(frames[0].line.length_m(), 0);
}

TEST(ParseFrames, NamedIntervalProperties) {
  auto frames = parse_frames(collection(feature(
      std::string(R"({"name":"north field","round1":")") + kRound1 +
      R"(","round2":")" + kRound2 + R"(","note":"a/b","n":3})")));
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].line.id(), "north field");
  ASSERT_EQ(frames[0].events.size(), 2u);
  EXPECT_EQ(frames[0].events[0].label(), "round1");
  EXPECT_EQ(frames[0].events[1].label(), "round2");
}

TEST(ParseFrames, ArrayEventsComeFirst) {
  auto frames = parse_frames(collection(feature(
      std::string(R"({"later":")") + kRound2 + R"(","events":[")" + kRound1 +
      R"("]})")));
  ASSERT_EQ(frames[0].events.size(), 2u);
  EXPECT_EQ(frames[0].events[0].label(), "e0");
  EXPECT_EQ(frames[0].events[1].label(), "later");
}

TEST(ParseFrames, FrameIdPrecedence) {
  const std::string props = std::string(R"({"name":"nm","events":[")") + kRound1 + "\"]}";
  auto frames = parse_frames(collection(
      feature(props, "[[0,0],[0,0.01]]", R"(,"id":"given")") + "," +
      feature(props, "[[0,0],[0,0.01]]", R"(,"id":7)") + "," +
      feature(props) + "," +
      feature(std::string(R"({"events":[")") + kRound1 + "\"]}")));
  ASSERT_EQ(frames.size(), 4u);
  EXPECT_EQ(frames[0].line.id(), "given");
  EXPECT_EQ(frames[1].line.id(), "7");
  EXPECT_EQ(frames[2].line.id(), "nm");
  EXPECT_EQ(frames[3].line.id(), "f3");
}

TEST(ParseFrames, DuplicateIdsAreSuffixed) {
  const std::string f = feature(std::string(R"({"name":"pitch","events":[")") +
                                kRound1 + "\"]}");
  Warnings w;
  auto frames = parse_frames(collection(f + "," + f), &w);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].line.id(), "pitch");
  EXPECT_EQ(frames[1].line.id(), "pitch-2");
  EXPECT_EQ(w.size(), 1u);
}

TEST(ParseFrames, ThreePointLineIsRejectedByName) {
  auto e = error_of([] {
    parse_frames(collection(feature(
        std::string(R"({"name":"bent","events":[")") + kRound1 + "\"]}",
        "[[0,0],[0,0.01],[0.01,0.01]]")));
  });
  EXPECT_EQ(e.code(), ErrorCode::BadLineString);
  EXPECT_NE(std::string(e.what()).find("bent"), std::string::npos);
}

TEST(ParseFrames, OtherGeometriesAreSkippedWithWarning) {
  const std::string point =
      R"({"type":"Feature","geometry":{"type":"Point","coordinates":[0,0]},"properties":{}})";
  Warnings w;
  auto frames = parse_frames(
      collection(point + "," +
                 feature(std::string(R"({"events":[")") + kRound1 + "\"]}")),
      &w);
  EXPECT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].line.id(), "f1");
  EXPECT_EQ(w.size(), 1u);
}

TEST(ParseFrames, Errors) {
  EXPECT_EQ(error_of([] { parse_frames("{not json"); }).code(),
            ErrorCode::NotFeatureCollection);
  EXPECT_EQ(error_of([] { parse_frames(R"({"type":"Feature"})"); }).code(),
            ErrorCode::NotFeatureCollection);
  EXPECT_EQ(error_of([] { parse_frames("[]"); }).code(),
            ErrorCode::NotFeatureCollection);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(R"({"name":"x"})")));
            }).code(),
            ErrorCode::NoEvents);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(
                  std::string(R"({"events":[")") + kRound1 + "\"]}",
                  "[[1,2],[1,2]]")));
            }).code(),
            ErrorCode::CoincidentPoints);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(
                  std::string(R"({"events":[")") + kRound1 + "\"]}",
                  "[[1,95],[1,2]]")));
            }).code(),
            ErrorCode::BadLineString);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(R"({"events":["nonsense"]})")));
            }).code(),
            ErrorCode::MalformedInterval);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(R"({"events":[42]})")));
            }).code(),
            ErrorCode::MalformedInterval);
  EXPECT_EQ(error_of([] {
              parse_frames(collection(feature(
                  R"({"r":"2017-06-10T05:20:00Z/2017-06-10T05:00:00Z"})")));
            }).code(),
            ErrorCode::ReversedInterval);
}

TEST(ParseFrames, EmptyCollection) {
  EXPECT_TRUE(parse_frames(collection("")).empty());
}

// --- parse_gpx --------------------------------------------------------------

TEST(ParseGpx, SingleSegmentInTimeOrder) {
  const auto text = make_gpx({{{1, 2, at(20)}, {1, 2.1, at(0)}, {1, 2.2, at(10)}}});
  Trace t = parse_gpx(text, "run");
  EXPECT_EQ(t.id(), "run");
  ASSERT_EQ(t.points().size(), 3u);
  EXPECT_EQ(t.points()[0].time_utc(), at(0));
  EXPECT_EQ(t.points()[0].lon_deg(), 2.1);
  EXPECT_EQ(t.points()[2].time_utc(), at(20));
}

TEST(ParseGpx, SegmentsAreFlattened) {
  std::vector<Fix> a, b;
  for (int i = 0; i < 5; ++i) a.push_back({1, 2, at(i)});
  for (int i = 0; i < 5; ++i) b.push_back({1, 2, at(100 + i)});
  EXPECT_EQ(parse_gpx(make_gpx({a, b}), "x").points().size(), 10u);
}

TEST(ParseGpx, EqualTimesKeepDocumentOrder) {
  Trace t = parse_gpx(make_gpx({{{1, 2, at(5)}, {3, 4, at(5)}, {5, 6, at(1)}}}), "x");
  EXPECT_EQ(t.points()[1].lat_deg(), 1);
  EXPECT_EQ(t.points()[2].lat_deg(), 3);
}

TEST(ParseGpx, Gpx10AndPrefixedNamespaces) {
  const std::string v10 = R"(<?xml version="1.0"?>
<gpx version="1.0" xmlns="http://www.topografix.com/GPX/1/0">
 <trk><trkseg>
  <trkpt lat="-37.85" lon="145.0"><time>2017-06-10T05:00:01Z</time></trkpt>
 </trkseg></trk>
</gpx>)";
  EXPECT_EQ(parse_gpx(v10, "a").points().size(), 1u);

  const std::string prefixed = R"(<g:gpx xmlns:g="http://www.topografix.com/GPX/1/1">
 <!-- comment -->
 <g:trk><g:trkseg>
  <g:trkpt lat="1" lon="2"><g:time> 2017-06-10T05:00:01.250Z </g:time></g:trkpt>
 </g:trkseg></g:trk>
</g:gpx>)";
  Trace t = parse_gpx(prefixed, "b");
  ASSERT_EQ(t.points().size(), 1u);
  EXPECT_EQ(t.points()[0].time_utc(), at(1.25));
}

TEST(ParseGpx, UntimedPointsAreSkippedWithWarning) {
  const std::string text = R"(<gpx><trk><trkseg>
  <trkpt lat="1" lon="2"><time>2017-06-10T05:00:01Z</time></trkpt>
  <trkpt lat="1" lon="2"></trkpt>
  <trkpt lat="1" lon="2"><time>yesterday</time></trkpt>
  <trkpt lat="x" lon="2"><time>2017-06-10T05:00:01Z</time></trkpt>
 </trkseg></trk></gpx>)";
  Warnings w;
  Trace t = parse_gpx(text, "a", &w);
  EXPECT_EQ(t.points().size(), 1u);
  EXPECT_EQ(w.size(), 3u);
}

TEST(ParseGpx, Errors) {
  EXPECT_EQ(error_of([] { parse_gpx("<gpx><trk>", "a"); }).code(),
            ErrorCode::MalformedXml);
  EXPECT_EQ(error_of([] { parse_gpx("", "a"); }).code(), ErrorCode::MalformedXml);
  EXPECT_EQ(error_of([] { parse_gpx("<kml></kml>", "a"); }).code(),
            ErrorCode::MalformedXml);
  EXPECT_EQ(error_of([] {
              parse_gpx(R"(<gpx><trk><trkseg><trkpt lat="1" lon="2"/></trkseg></trk></gpx>)",
                        "a");
            }).code(),
            ErrorCode::NoTimedPoints);
  EXPECT_EQ(error_of([] { parse_gpx("<gpx/>", "a"); }).code(),
            ErrorCode::NoTimedPoints);
}

// --- load_inputs ------------------------------------------------------------

class LoadInputs : public ::testing::Test {
 protected:
  void SetUp() override {
    write_file(frames_, collection(feature(std::string(R"({"events":[")") +
                                           kRound1 + "\"]}")));
  }
  std::string gpx() const { return make_gpx({{{-37.85, 145, at(1)}}}); }

  TempDir dir_{"ingest"};
  std::filesystem::path frames_ = dir_ / "frames.geojson";
  std::filesystem::path traces_ = dir_ / "traces";
};

TEST_F(LoadInputs, ExtensionFilter) {
  write_file(traces_ / "b.gpx", gpx());
  write_file(traces_ / "a.GPX", gpx());
  write_file(traces_ / "notes.txt", "hello");
  auto in = load_inputs(frames_, traces_);
  ASSERT_EQ(in.traces.size(), 2u);
  EXPECT_EQ(in.traces[0].id(), "a");
  EXPECT_EQ(in.traces[1].id(), "b");
  EXPECT_EQ(in.report.traces_loaded, 2u);
  EXPECT_EQ(in.report.frames_loaded, 1u);
  EXPECT_EQ(in.report.events_loaded, 1u);
  EXPECT_TRUE(in.report.warnings.empty());
}

TEST_F(LoadInputs, CorruptFileBecomesWarning) {
  write_file(traces_ / "a.gpx", gpx());
  write_file(traces_ / "b.gpx", "<gpx><trk>");
  write_file(traces_ / "c.gpx", gpx());
  auto in = load_inputs(frames_, traces_);
  EXPECT_EQ(in.traces.size(), 2u);
  ASSERT_EQ(in.report.warnings.size(), 1u);
  EXPECT_NE(in.report.warnings[0].source.find("b.gpx"), std::string::npos);
  EXPECT_NE(in.report.warnings[0].message.find("MalformedXml"), std::string::npos);
}

TEST_F(LoadInputs, DuplicateStemsAndRecursion) {
  write_file(traces_ / "run.gpx", gpx());
  write_file(traces_ / "run.GPX", gpx());
  write_file(traces_ / "sub" / "run.gpx", gpx());
  auto flat = load_inputs(frames_, traces_);
  ASSERT_EQ(flat.traces.size(), 2u);
  EXPECT_EQ(flat.traces[0].id(), "run");
  EXPECT_EQ(flat.traces[1].id(), "run-2");

  auto deep = load_inputs(frames_, traces_, true);
  ASSERT_EQ(deep.traces.size(), 3u);
  EXPECT_EQ(deep.traces[2].id(), "run-3");
}

TEST_F(LoadInputs, Errors) {
  std::filesystem::create_directories(traces_);
  EXPECT_EQ(error_of([&] { load_inputs(frames_, traces_); }).code(),
            ErrorCode::NoTraces);
  EXPECT_EQ(error_of([&] { load_inputs(dir_ / "missing.geojson", traces_); }).code(),
            ErrorCode::FramesFileUnreadable);
  EXPECT_EQ(error_of([&] { load_inputs(frames_, dir_ / "nowhere"); }).code(),
            ErrorCode::TracesDirUnreadable);
  write_file(traces_ / "a.gpx", gpx());
  write_file(frames_, "{}");
  auto e = error_of([&] { load_inputs(frames_, traces_); });
  EXPECT_EQ(e.code(), ErrorCode::NotFeatureCollection);
  EXPECT_NE(std::string(e.what()).find("frames.geojson"), std::string::npos);
}

}  // namespace
}  // namespace gpsxyt
