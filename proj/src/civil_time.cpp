#include "thermobench/civil_time.hpp"

#include <cstdio>

namespace thermobench {

std::optional<std::int64_t> parse_iso8601_utc(const std::string& s) {
    CivilTime c{};
    int consumed = 0;
    // Seconds are optional in some exports.
    int n = std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d%n", &c.year, &c.month,
                        &c.day, &c.hour, &c.minute, &c.second, &consumed);
    if (n < 5) return std::nullopt;
    if (n == 5) {
        c.second = 0;
        // Re-scan to find where the minute field ended.
        std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d%n", &c.year, &c.month, &c.day,
                    &c.hour, &c.minute, &consumed);
    }
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour < 0 ||
        c.hour > 23 || c.minute < 0 || c.minute > 59 || c.second < 0 ||
        c.second > 60)
        return std::nullopt;

    std::int64_t t = to_unix_seconds(c);

    const std::string tail = s.substr(static_cast<std::size_t>(consumed));
    if (tail.empty() || tail == "Z" || tail == "z") return t;
    int oh = 0, om = 0;
    char sign = 0;
    if (std::sscanf(tail.c_str(), "%c%2d:%2d", &sign, &oh, &om) == 3 &&
        (sign == '+' || sign == '-')) {
        const std::int64_t off = oh * 3600 + om * 60;
        return sign == '+' ? t - off : t + off;
    }
    return std::nullopt;
}

std::string format_iso8601_utc(std::int64_t t) {
    const CivilTime c = from_unix_seconds(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year,
                  c.month, c.day, c.hour, c.minute, c.second);
    return buf;
}

}  // namespace thermobench
