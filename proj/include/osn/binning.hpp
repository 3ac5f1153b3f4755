#pragma once

#include "osn/records.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace osn {

enum class PatternKind { daily, weekly, monthly };

/// Statistics pattern selector. Monthly patterns carry the target month;
/// daily/weekly must not.
struct Pattern {
    PatternKind kind = PatternKind::daily;
    int year = 0;       // monthly only
    unsigned month = 0; // monthly only, 1..12

    static Pattern daily() { return {PatternKind::daily, 0, 0}; }
    static Pattern weekly() { return {PatternKind::weekly, 0, 0}; }
    static Pattern monthly(int year, unsigned month) {
        return {PatternKind::monthly, year, month};
    }

    bool operator==(const Pattern&) const = default;
};

/// Binned event counts for one pattern.
/// daily: 24 one-hour bins over [0,24); weekly: 7 ISO weekday bins
/// (Monday=0); monthly: one bin per day of the selected month.
struct Histogram {
    Pattern pattern;
    std::vector<double> edges;       // bin boundaries, counts.size()+1 of them
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    bool operator==(const Histogram&) const = default;
};

/// Fractional hours since midnight UTC: hour + minute/60 + second/3600,
/// always in [0, 24).
double time_of_day(UtcSeconds ts);

/// Shifts an instant by a fixed fractional-hour offset (rounded to seconds).
/// Lets diurnal statistics be computed in a chosen fixed utc-offset zone.
UtcSeconds shift_hours(UtcSeconds ts, double offset_hours);

/// Bins events for the pattern. The optional tz offset is applied to every
/// timestamp before bin selection. Monthly patterns keep only events inside
/// the selected month; total reflects the included events.
Histogram bin_events(std::span<const EventRecord> events, const Pattern& pattern,
                     double tz_offset_hours = 0.0);

} // namespace osn
