#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpsxyt {

// Numeric values are part of the C ABI (see gpsxyt.h) and must not change.
enum class ErrorCode : int {
  InvalidArgument = 1,
  CoincidentPoints = 2,
  NearAntipodal = 3,
  PolarOrigin = 4,
  OutOfDomain = 5,
  MalformedInterval = 6,
  ReversedInterval = 7,
  NotFeatureCollection = 8,
  BadLineString = 9,
  NoEvents = 10,
  MalformedXml = 11,
  NoTimedPoints = 12,
  FramesFileUnreadable = 13,
  TracesDirUnreadable = 14,
  NoTraces = 15,
  IoError = 16,
  NoSeries = 17,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Same code, message prefixed with where it happened.
  Error with_context(std::string_view context) const {
    return Error(code_, std::string(context) + ": " + what());
  }

 private:
  ErrorCode code_;
};

}  // namespace gpsxyt
