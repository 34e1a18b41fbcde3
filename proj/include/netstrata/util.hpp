#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace netstrata {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

// FNV-1a 64-bit. Used for run-manifest digests; provenance bookkeeping,
// not a cryptographic hash.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v, int width) {
    static const char* digits = "0123456789abcdef";
    std::string s(width, '0');
    for (int i = width - 1; i >= 0 && v; --i, v >>= 4) s[i] = digits[v & 0xf];
    return s;
}

inline std::string to_hex(std::uint64_t v) { return to_hex(v, 16); }

}  // namespace netstrata
