#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace thermobench {

// Minimal proleptic-Gregorian calendar math for hourly UTC series.
// Self-contained so timestamp handling is identical on every platform.

struct CivilTime {
    int year;
    int month;   // 1..12
    int day;     // 1..31
    int hour;    // 0..23
    int minute;  // 0..59
    int second;  // 0..59
};

// Days since 1970-01-01 (Howard Hinnant's algorithm).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);           // [0, 399]
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;          // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += (m <= 2);
}

constexpr std::int64_t to_unix_seconds(const CivilTime& c) {
    return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 +
           c.minute * 60 + c.second;
}

inline CivilTime from_unix_seconds(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    CivilTime c{};
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

inline int utc_year(std::int64_t t) { return from_unix_seconds(t).year; }

inline int utc_hour(std::int64_t t) { return from_unix_seconds(t).hour; }

// Day of year, 1-based (Jan 1 = 1; Dec 31 = 365 or 366).
inline int utc_day_of_year(std::int64_t t) {
    const CivilTime c = from_unix_seconds(t);
    const std::int64_t jan1 = days_from_civil(c.year, 1, 1);
    return static_cast<int>(days_from_civil(c.year, c.month, c.day) - jan1) + 1;
}

// Accepts "YYYY-MM-DDTHH:MM[:SS]" with 'Z', "+HH:MM"/"-HH:MM", or no suffix
// (treated as UTC). A single space instead of 'T' is tolerated.
std::optional<std::int64_t> parse_iso8601_utc(const std::string& s);

// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(std::int64_t t);

}  // namespace thermobench
