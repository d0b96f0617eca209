#include "gpsxyt/error.hpp"

namespace gpsxyt {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NearAntipodal: return "NearAntipodal";
    case ErrorCode::PolarOrigin: return "PolarOrigin";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::MalformedInterval: return "MalformedInterval";
    case ErrorCode::ReversedInterval: return "ReversedInterval";
    case ErrorCode::NotFeatureCollection: return "NotFeatureCollection";
    case ErrorCode::BadLineString: return "BadLineString";
    case ErrorCode::NoEvents: return "NoEvents";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::NoTimedPoints: return "NoTimedPoints";
    case ErrorCode::FramesFileUnreadable: return "FramesFileUnreadable";
    case ErrorCode::TracesDirUnreadable: return "TracesDirUnreadable";
    case ErrorCode::NoTraces: return "NoTraces";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NoSeries: return "NoSeries";
  }
  return "Unknown";
}

}  // namespace gpsxyt
