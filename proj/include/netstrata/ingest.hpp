#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netstrata/records.hpp"

namespace netstrata::ingest {

struct RowError {
    std::size_t line;  // physical line in the file (header = line 1)
    std::string message;
};

// Per-file parse outcome. Valid rows become records, bad rows become
// row-level errors; parsed + errors covers every data row exactly once.
struct ValidationReport {
    std::string dataset;
    std::size_t rows_total = 0;
    std::size_t rows_parsed = 0;
    std::vector<RowError> errors;
    std::size_t warnings = 0;  // e.g. odd-looking ISIN formats

    bool clean() const { return errors.empty(); }
};

// Loaders for the granular CSV schemas. A missing required column rejects
// the whole file; a malformed row is recorded as a row-level error unless
// `strict`, in which case the first bad row throws.
std::vector<LoanRecord> load_loans_csv(std::istream& in, ValidationReport& report,
                                       bool strict = false);
std::vector<HoldingRecord> load_holdings_csv(std::istream& in, ValidationReport& report,
                                             bool strict = false);
std::vector<SecurityRef> load_securities_csv(std::istream& in, ValidationReport& report,
                                             bool strict = false);
std::vector<SftRecord> load_sft_csv(std::istream& in, ValidationReport& report,
                                    bool strict = false);

// Writers emitting exactly the schema the loaders accept; a parse of the
// written stream reproduces the records field for field.
void write_loans_csv(std::ostream& out, const std::vector<LoanRecord>& records);
void write_holdings_csv(std::ostream& out, const std::vector<HoldingRecord>& records);
void write_securities_csv(std::ostream& out, const std::vector<SecurityRef>& records);
void write_sft_csv(std::ostream& out, const std::vector<SftRecord>& records);

// Keeps the transactions open at the end of `as_of`: opened on or before it
// and either never closed or closed strictly after it.
std::vector<SftRecord> snapshot_filter(const std::vector<SftRecord>& records, Date as_of);

}  // namespace netstrata::ingest
