#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gpsxyt/model.hpp"

namespace gpsxyt {

struct ParsedInstant {
  Instant time;
  bool has_offset;  // false when the text carried no Z or +hh:mm designator
};

// Parses an ISO 8601 extended-format date-time:
//   YYYY-MM-DDThh:mm[:ss[.fff...]][Z|+hh|+hhmm|+hh:mm]
// 't' or a single space may replace 'T', ',' may replace '.'. Fraction digits
// past microseconds are dropped. Offset-less values are taken as UTC and
// flagged through has_offset. Returns nullopt on any syntax or range error.
std::optional<ParsedInstant> parse_datetime(std::string_view text);

// Canonical UTC rendering, e.g. "2017-06-10T05:00:00Z" or
// "2017-06-10T05:00:00.25Z". parse_datetime recovers the instant exactly.
std::string format_instant(Instant t);

}  // namespace gpsxyt
