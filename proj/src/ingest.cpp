#include "netstrata/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "netstrata/csv.hpp"
#include "netstrata/error.hpp"
#include "netstrata/util.hpp"

namespace netstrata::ingest {

const char* to_string(InstrumentType t) {
    switch (t) {
        case InstrumentType::deposit: return "deposit";
        case InstrumentType::credit_line: return "credit_line";
        case InstrumentType::revolving_credit: return "revolving_credit";
        case InstrumentType::reverse_repo: return "reverse_repo";
        case InstrumentType::convenience_credit: return "convenience_credit";
        case InstrumentType::other: return "other";
    }
    return "other";
}

const char* to_string(SecurityKind k) {
    switch (k) {
        case SecurityKind::debt: return "debt";
        case SecurityKind::equity: return "equity";
        case SecurityKind::fund_share: return "fund_share";
    }
    return "debt";
}

const char* to_string(SftKind k) {
    switch (k) {
        case SftKind::repo: return "repo";
        case SftKind::buy_sellback: return "buy_sellback";
        case SftKind::securities_lending: return "securities_lending";
        case SftKind::margin_lending: return "margin_lending";
    }
    return "repo";
}

std::optional<InstrumentType> parse_instrument_type(const std::string& s) {
    for (auto t : {InstrumentType::deposit, InstrumentType::credit_line,
                   InstrumentType::revolving_credit, InstrumentType::reverse_repo,
                   InstrumentType::convenience_credit, InstrumentType::other})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

std::optional<SecurityKind> parse_security_kind(const std::string& s) {
    for (auto k : {SecurityKind::debt, SecurityKind::equity, SecurityKind::fund_share})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::optional<SftKind> parse_sft_kind(const std::string& s) {
    for (auto k : {SftKind::repo, SftKind::buy_sellback, SftKind::securities_lending,
                   SftKind::margin_lending})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

namespace {

struct RowCursor {
    const std::vector<std::string>& row;
    const std::vector<std::size_t>& cols;
    std::string error;

    std::string field(std::size_t i) const { return std::string(trim(row[cols[i]])); }
};

class Loader {
public:
    Loader(std::istream& in, ValidationReport& report, bool strict,
           const std::vector<std::string>& columns, const char* dataset)
        : reader_(in), report_(report), strict_(strict) {
        report_.dataset = dataset;
        auto header = reader_.next();
        if (!header) fail("csv.header", std::string(dataset) + ": empty file");
        for (auto& f : *header) f = std::string(trim(f));
        for (const auto& col : columns) {
            auto it = std::find(header->begin(), header->end(), col);
            if (it == header->end())
                fail("csv.header",
                     std::string(dataset) + ": missing required column '" + col + "'");
            cols_.push_back(std::size_t(it - header->begin()));
        }
        width_ = header->size();
    }

    template <typename Record, typename ParseFn>
    std::vector<Record> run(ParseFn&& parse) {
        std::vector<Record> out;
        while (auto row = reader_.next()) {
            ++report_.rows_total;
            if (row->size() < width_) {
                report_error(reader_.line(), "too few fields");
                continue;
            }
            RowCursor cur{*row, cols_, {}};
            auto rec = parse(cur);
            if (!rec) {
                report_error(reader_.line(), cur.error);
                continue;
            }
            ++report_.rows_parsed;
            out.push_back(std::move(*rec));
        }
        return out;
    }

    void warn() { ++report_.warnings; }

private:
    void report_error(std::size_t line, const std::string& msg) {
        if (strict_)
            fail("csv.row", report_.dataset + " line " + std::to_string(line) + ": " + msg);
        report_.errors.push_back({line, msg});
    }

    csv::Reader reader_;
    ValidationReport& report_;
    bool strict_;
    std::size_t width_ = 0;
    std::vector<std::size_t> cols_;
};

bool parse_positive_money(RowCursor& cur, const std::string& s, const char* what, Money& out) {
    auto m = parse_money(s);
    if (!m) {
        cur.error = std::string("malformed ") + what + ": " + s;
        return false;
    }
    if (m->cents <= 0) {
        cur.error = std::string("non-positive amount in ") + what;
        return false;
    }
    out = *m;
    return true;
}

bool parse_required_date(RowCursor& cur, const std::string& s, const char* what, Date& out) {
    auto d = Date::parse(s);
    if (!d) {
        cur.error = std::string("malformed ") + what + ": " + s;
        return false;
    }
    out = *d;
    return true;
}

bool parse_optional_date(RowCursor& cur, const std::string& s, const char* what,
                         std::optional<Date>& out) {
    if (s.empty()) {
        out.reset();
        return true;
    }
    Date d;
    if (!parse_required_date(cur, s, what, d)) return false;
    out = d;
    return true;
}

bool plausible_isin(const std::string& s) {
    if (s.size() != 12) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) ||
        !std::isalpha(static_cast<unsigned char>(s[1])))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalnum(c); });
}

}  // namespace

std::vector<LoanRecord> load_loans_csv(std::istream& in, ValidationReport& report, bool strict) {
    Loader loader(in, report, strict,
                  {"creditor_id", "debtor_id", "instrument_type", "outstanding_nominal",
                   "origination_date", "maturity_date", "reference_date"},
                  "loans");
    return loader.run<LoanRecord>([](RowCursor& cur) -> std::optional<LoanRecord> {
        LoanRecord r;
        r.creditor_id = cur.field(0);
        r.debtor_id = cur.field(1);
        if (r.creditor_id.empty() || r.debtor_id.empty()) {
            cur.error = "empty counterparty id";
            return std::nullopt;
        }
        auto t = parse_instrument_type(cur.field(2));
        if (!t) {
            cur.error = "unknown instrument_type: " + cur.field(2);
            return std::nullopt;
        }
        r.instrument_type = *t;
        if (!parse_positive_money(cur, cur.field(3), "outstanding_nominal", r.outstanding_nominal))
            return std::nullopt;
        if (!parse_required_date(cur, cur.field(4), "origination_date", r.origination_date))
            return std::nullopt;
        if (!parse_optional_date(cur, cur.field(5), "maturity_date", r.maturity_date))
            return std::nullopt;
        if (!parse_required_date(cur, cur.field(6), "reference_date", r.reference_date))
            return std::nullopt;
        if (r.maturity_date && *r.maturity_date < r.origination_date) {
            cur.error = "maturity_date precedes origination_date";
            return std::nullopt;
        }
        return r;
    });
}

std::vector<HoldingRecord> load_holdings_csv(std::istream& in, ValidationReport& report,
                                             bool strict) {
    Loader loader(in, report, strict, {"holder_id", "isin", "market_value", "reference_date"},
                  "holdings");
    return loader.run<HoldingRecord>([&loader](RowCursor& cur) -> std::optional<HoldingRecord> {
        HoldingRecord r;
        r.holder_id = cur.field(0);
        r.isin = cur.field(1);
        if (r.holder_id.empty() || r.isin.empty()) {
            cur.error = "empty holder_id or isin";
            return std::nullopt;
        }
        if (!plausible_isin(r.isin)) loader.warn();
        if (!parse_positive_money(cur, cur.field(2), "market_value", r.market_value))
            return std::nullopt;
        if (!parse_required_date(cur, cur.field(3), "reference_date", r.reference_date))
            return std::nullopt;
        return r;
    });
}

std::vector<SecurityRef> load_securities_csv(std::istream& in, ValidationReport& report,
                                             bool strict) {
    Loader loader(in, report, strict, {"isin", "issuer_id", "kind"}, "securities");
    std::unordered_set<std::string> seen;
    return loader.run<SecurityRef>(
        [&seen, &loader](RowCursor& cur) -> std::optional<SecurityRef> {
            SecurityRef r;
            r.isin = cur.field(0);
            r.issuer_id = cur.field(1);
            if (r.isin.empty() || r.issuer_id.empty()) {
                cur.error = "empty isin or issuer_id";
                return std::nullopt;
            }
            if (!plausible_isin(r.isin)) loader.warn();
            if (!seen.insert(r.isin).second) {
                cur.error = "duplicate isin: " + r.isin;
                return std::nullopt;
            }
            auto k = parse_security_kind(cur.field(2));
            if (!k) {
                cur.error = "unknown security kind: " + cur.field(2);
                return std::nullopt;
            }
            r.kind = *k;
            return r;
        });
}

std::vector<SftRecord> load_sft_csv(std::istream& in, ValidationReport& report, bool strict) {
    Loader loader(in, report, strict,
                  {"collateral_taker_id", "collateral_giver_id", "kind", "open_amount",
                   "open_date", "close_date", "reference_date"},
                  "sft");
    return loader.run<SftRecord>([](RowCursor& cur) -> std::optional<SftRecord> {
        SftRecord r;
        r.collateral_taker_id = cur.field(0);
        r.collateral_giver_id = cur.field(1);
        if (r.collateral_taker_id.empty() || r.collateral_giver_id.empty()) {
            cur.error = "empty counterparty id";
            return std::nullopt;
        }
        auto k = parse_sft_kind(cur.field(2));
        if (!k) {
            cur.error = "unknown sft kind: " + cur.field(2);
            return std::nullopt;
        }
        r.kind = *k;
        if (!parse_positive_money(cur, cur.field(3), "open_amount", r.open_amount))
            return std::nullopt;
        if (!parse_required_date(cur, cur.field(4), "open_date", r.open_date))
            return std::nullopt;
        if (!parse_optional_date(cur, cur.field(5), "close_date", r.close_date))
            return std::nullopt;
        if (!parse_required_date(cur, cur.field(6), "reference_date", r.reference_date))
            return std::nullopt;
        if (r.close_date && *r.close_date < r.open_date) {
            cur.error = "close_date precedes open_date";
            return std::nullopt;
        }
        return r;
    });
}

void write_loans_csv(std::ostream& out, const std::vector<LoanRecord>& records) {
    csv::write_row(out, {"creditor_id", "debtor_id", "instrument_type", "outstanding_nominal",
                         "origination_date", "maturity_date", "reference_date"});
    for (const auto& r : records)
        csv::write_row(out, {r.creditor_id, r.debtor_id, to_string(r.instrument_type),
                             format_money(r.outstanding_nominal), r.origination_date.str(),
                             r.maturity_date ? r.maturity_date->str() : "",
                             r.reference_date.str()});
}

void write_holdings_csv(std::ostream& out, const std::vector<HoldingRecord>& records) {
    csv::write_row(out, {"holder_id", "isin", "market_value", "reference_date"});
    for (const auto& r : records)
        csv::write_row(out,
                       {r.holder_id, r.isin, format_money(r.market_value), r.reference_date.str()});
}

void write_securities_csv(std::ostream& out, const std::vector<SecurityRef>& records) {
    csv::write_row(out, {"isin", "issuer_id", "kind"});
    for (const auto& r : records) csv::write_row(out, {r.isin, r.issuer_id, to_string(r.kind)});
}

void write_sft_csv(std::ostream& out, const std::vector<SftRecord>& records) {
    csv::write_row(out, {"collateral_taker_id", "collateral_giver_id", "kind", "open_amount",
                         "open_date", "close_date", "reference_date"});
    for (const auto& r : records)
        csv::write_row(out, {r.collateral_taker_id, r.collateral_giver_id, to_string(r.kind),
                             format_money(r.open_amount), r.open_date.str(),
                             r.close_date ? r.close_date->str() : "", r.reference_date.str()});
}

std::vector<SftRecord> snapshot_filter(const std::vector<SftRecord>& records, Date as_of) {
    std::vector<SftRecord> out;
    for (const auto& r : records)
        if (r.open_date <= as_of && (!r.close_date || *r.close_date > as_of)) out.push_back(r);
    return out;
}

}  // namespace netstrata::ingest
