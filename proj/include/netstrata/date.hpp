#pragma once

#include <charconv>
#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace netstrata {

// Calendar date, ISO-8601 in and out.
struct Date {
    std::chrono::year_month_day ymd{};

    static std::optional<Date> parse(std::string_view s) {
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
        int y = 0, m = 0, d = 0;
        auto num = [](std::string_view t, int& out) {
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
            return ec == std::errc{} && p == t.data() + t.size();
        };
        if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d))
            return std::nullopt;
        std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
        if (!ymd.ok()) return std::nullopt;
        return Date{ymd};
    }

    std::string str() const {
        int y = int(ymd.year());
        unsigned m = unsigned(ymd.month());
        unsigned d = unsigned(ymd.day());
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
        return buf;
    }

    std::chrono::sys_days days() const { return std::chrono::sys_days(ymd); }

    // Calendar month addition with end-of-month clamping (Jan 31 + 3mo = Apr 30).
    Date add_months(int n) const {
        auto r = ymd + std::chrono::months{n};
        if (!r.ok()) r = r.year() / r.month() / std::chrono::last;
        return Date{r};
    }

    bool is_end_of_month() const {
        return ymd == ymd.year() / ymd.month() / std::chrono::last;
    }

    friend auto operator<=>(const Date& a, const Date& b) { return a.days() <=> b.days(); }
    friend bool operator==(const Date& a, const Date& b) { return a.ymd == b.ymd; }
};

}  // namespace netstrata
