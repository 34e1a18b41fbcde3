#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace netstrata::csv {

// RFC-4180 subset: comma separator, double-quote quoting with "" escapes,
// LF or CRLF line endings. Quoted fields may contain separators and quotes
// but not newlines (none of the interchange schemas need them).
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Returns the next record, or nullopt at end of stream. Blank lines are
    // skipped. line() reports the 1-based physical line of the last record.
    std::optional<std::vector<std::string>> next() {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (raw.empty()) continue;
            return parse_line(raw);
        }
        return std::nullopt;
    }

    std::size_t line() const { return line_; }

private:
    static std::vector<std::string> parse_line(std::string_view s) {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < s.size() && s[i + 1] == '"') {
                        cur += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    cur += c;
                }
            } else if (c == '"' && cur.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
        return fields;
    }

    std::istream& in_;
    std::size_t line_ = 0;
};

inline std::string escape(std::string_view field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace netstrata::csv
