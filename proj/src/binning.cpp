#include "osn/binning.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace osn {

namespace {

using namespace std::chrono;

std::vector<double> uniform_edges(size_t bins, double width) {
    std::vector<double> edges(bins + 1);
    for (size_t i = 0; i <= bins; ++i) edges[i] = static_cast<double>(i) * width;
    return edges;
}

} // namespace

double time_of_day(UtcSeconds ts) {
    const sys_days date = floor<days>(ts);
    const auto since_midnight = duration_cast<seconds>(ts - date);
    return static_cast<double>(since_midnight.count()) / 3600.0;
}

UtcSeconds shift_hours(UtcSeconds ts, double offset_hours) {
    const auto shift = seconds{static_cast<std::int64_t>(std::llround(offset_hours * 3600.0))};
    return ts + shift;
}

Histogram bin_events(std::span<const EventRecord> events, const Pattern& pattern,
                     double tz_offset_hours) {
    Histogram hist;
    hist.pattern = pattern;

    size_t bins = 0;
    switch (pattern.kind) {
    case PatternKind::daily:
        bins = 24;
        break;
    case PatternKind::weekly:
        bins = 7;
        break;
    case PatternKind::monthly: {
        const year_month ym{year{pattern.year}, month{pattern.month}};
        if (!ym.ok())
            throw std::domain_error("bin_events: invalid month selector");
        const year_month_day_last last{ym.year(), month_day_last{ym.month()}};
        bins = static_cast<size_t>(unsigned(last.day()));
        break;
    }
    }
    hist.edges = uniform_edges(bins, 1.0);
    hist.counts.assign(bins, 0);

    for (const auto& ev : events) {
        const UtcSeconds ts = shift_hours(ev.timestamp, tz_offset_hours);
        const sys_days date = floor<days>(ts);
        size_t bin = 0;
        switch (pattern.kind) {
        case PatternKind::daily:
            bin = static_cast<size_t>(time_of_day(ts)); // floor of the hour
            break;
        case PatternKind::weekly:
            bin = weekday{date}.iso_encoding() - 1; // Monday=0
            break;
        case PatternKind::monthly: {
            const year_month_day ymd{date};
            if (int(ymd.year()) != pattern.year || unsigned(ymd.month()) != pattern.month)
                continue; // outside the selected month
            bin = unsigned(ymd.day()) - 1;
            break;
        }
        }
        ++hist.counts[bin];
        ++hist.total;
    }
    return hist;
}

} // namespace osn
