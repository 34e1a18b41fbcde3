#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace netstrata {

// EUR amount held as integer cents. Amounts stay exact through parsing and
// aggregation; conversion to double happens once, when a network layer is
// materialized.
struct Money {
    std::int64_t cents = 0;

    double eur() const { return static_cast<double>(cents) / 100.0; }

    auto operator<=>(const Money&) const = default;
    Money& operator+=(Money o) {
        cents += o.cents;
        return *this;
    }
};

// Accepts an optional sign, digits, and at most two fractional digits.
// More than two fractional digits would silently lose cents, so they are
// rejected rather than rounded.
inline std::optional<Money> parse_money(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    std::int64_t whole = 0;
    std::size_t digits = 0;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i, ++digits) {
        if (whole > (INT64_MAX - 9) / 10) return std::nullopt;
        whole = whole * 10 + (s[i] - '0');
    }
    if (digits == 0) return std::nullopt;
    std::int64_t frac = 0;
    if (i < s.size()) {
        if (s[i] != '.') return std::nullopt;
        ++i;
        std::size_t fd = 0;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i, ++fd)
            frac = frac * 10 + (s[i] - '0');
        if (i != s.size() || fd == 0 || fd > 2) return std::nullopt;
        if (fd == 1) frac *= 10;
    }
    if (i != s.size()) return std::nullopt;
    std::int64_t cents = whole * 100 + frac;
    return Money{neg ? -cents : cents};
}

inline std::string format_money(Money m) {
    std::int64_t c = m.cents;
    std::string sign;
    if (c < 0) {
        sign = "-";
        c = -c;
    }
    std::string s = std::to_string(c / 100);
    std::int64_t frac = c % 100;
    std::string fs = std::to_string(frac);
    if (fs.size() < 2) fs.insert(fs.begin(), '0');
    return sign + s + "." + fs;
}

}  // namespace netstrata
