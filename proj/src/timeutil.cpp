#include "osn/timeutil.hpp"

#include "osn/errors.hpp"

#include <cctype>
#include <cstdio>

namespace osn {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw ParseError("invalid RFC 3339 timestamp \"" + std::string(text) + "\": " + why);
}

} // namespace

UtcSeconds parse_rfc3339(std::string_view text) {
    using namespace std::chrono;

    // YYYY-MM-DDTHH:MM:SS is 19 characters, then Z or +HH:MM / -HH:MM.
    if (text.size() < 20) bad(text, "too short");
    if (text[4] != '-' || text[7] != '-') bad(text, "expected YYYY-MM-DD date");
    if (text[10] != 'T' && text[10] != 't') bad(text, "expected 'T' separator");
    if (text[13] != ':' || text[16] != ':') bad(text, "expected HH:MM:SS time");

    auto field = [&](size_t pos, size_t len) {
        std::string_view f = text.substr(pos, len);
        if (!all_digits(f)) bad(text, "non-digit in date/time field");
        return to_int(f);
    };

    const int y = field(0, 4);
    const int mo = field(5, 2);
    const int da = field(8, 2);
    const int hh = field(11, 2);
    const int mi = field(14, 2);
    const int ss = field(17, 2);

    if (text[19] == '.' || text[19] == ',')
        bad(text, "fractional seconds not supported (second precision)");

    seconds offset{0};
    std::string_view tail = text.substr(19);
    if (tail == "Z" || tail == "z") {
        // UTC
    } else if (tail.size() == 6 && (tail[0] == '+' || tail[0] == '-') && tail[3] == ':') {
        std::string_view oh = tail.substr(1, 2), om = tail.substr(4, 2);
        if (!all_digits(oh) || !all_digits(om)) bad(text, "non-digit in offset");
        const int ohv = to_int(oh), omv = to_int(om);
        if (ohv > 23 || omv > 59) bad(text, "offset out of range");
        offset = hours{ohv} + minutes{omv};
        if (tail[0] == '-') offset = -offset;
    } else {
        bad(text, "expected 'Z' or +HH:MM offset");
    }

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(da)}};
    if (!ymd.ok()) bad(text, "no such calendar date");
    if (hh > 23 || mi > 59 || ss > 59) bad(text, "time of day out of range");

    const sys_days date{ymd};
    return sys_seconds{date} + hours{hh} + minutes{mi} + seconds{ss} - offset;
}

std::string format_rfc3339(UtcSeconds ts) {
    using namespace std::chrono;
    const sys_days date = floor<days>(ts);
    const year_month_day ymd{date};
    const hh_mm_ss tod{ts - date};

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                  int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<long long>(tod.hours().count()),
                  static_cast<long long>(tod.minutes().count()),
                  static_cast<long long>(tod.seconds().count()));
    return buf;
}

} // namespace osn
