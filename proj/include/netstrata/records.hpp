#pragma once

#include <optional>
#include <string>

#include "netstrata/date.hpp"
#include "netstrata/money.hpp"

namespace netstrata::ingest {

enum class InstrumentType { deposit, credit_line, revolving_credit, reverse_repo, convenience_credit, other };
enum class SecurityKind { debt, equity, fund_share };
enum class SftKind { repo, buy_sellback, securities_lending, margin_lending };

const char* to_string(InstrumentType t);
const char* to_string(SecurityKind k);
const char* to_string(SftKind k);
std::optional<InstrumentType> parse_instrument_type(const std::string& s);
std::optional<SecurityKind> parse_security_kind(const std::string& s);
std::optional<SftKind> parse_sft_kind(const std::string& s);

struct LoanRecord {
    std::string creditor_id;
    std::string debtor_id;
    InstrumentType instrument_type = InstrumentType::other;
    Money outstanding_nominal;  // > 0
    Date origination_date;
    std::optional<Date> maturity_date;  // >= origination_date when present
    Date reference_date;

    bool operator==(const LoanRecord&) const = default;
};

struct HoldingRecord {
    std::string holder_id;
    std::string isin;
    Money market_value;  // > 0
    Date reference_date;

    bool operator==(const HoldingRecord&) const = default;
};

struct SecurityRef {
    std::string isin;  // unique within a reference set
    std::string issuer_id;
    SecurityKind kind = SecurityKind::debt;

    bool operator==(const SecurityRef&) const = default;
};

struct SftRecord {
    std::string collateral_taker_id;
    std::string collateral_giver_id;
    SftKind kind = SftKind::repo;
    Money open_amount;  // > 0
    Date open_date;
    std::optional<Date> close_date;  // >= open_date when present
    Date reference_date;

    bool operator==(const SftRecord&) const = default;
};

}  // namespace netstrata::ingest
