#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace osn {

/// UTC instant at second precision. All timestamps in the library are UTC.
using UtcSeconds = std::chrono::sys_seconds;

/// Parses an RFC 3339 timestamp ("2013-05-14T13:37:22Z" or with a
/// "+HH:MM"/"-HH:MM" offset). Offsets are normalized to UTC; fractional
/// seconds are rejected (the data model is second-precision).
/// Throws ParseError on malformed input.
UtcSeconds parse_rfc3339(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ". parse_rfc3339(format_rfc3339(t)) == t.
std::string format_rfc3339(UtcSeconds ts);

} // namespace osn
