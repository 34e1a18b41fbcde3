#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netstrata/ingest.hpp"
#include "netstrata/network.hpp"
#include "netstrata/registry.hpp"

namespace netstrata::net {

// Shared resolution of record-level ids onto the fixed node list. At group
// level nodes are the group heads; at entity level every assigned entity is
// a node in its own right. Ids outside the group map do not resolve.
struct NodeSpace {
    std::vector<std::string> nodes;  // sorted, unique
    Level level = Level::group;
    const registry::GroupMap* groups = nullptr;

    static NodeSpace make(const registry::GroupMap& groups, Level level);

    std::optional<NodeIndex> resolve(const std::string& id) const;
    // True when both ids belong to the same group. Unassigned ids never
    // share a group.
    bool same_group(const std::string& a, const std::string& b) const;
};

// Exclusion tallies for one layer build. Every input record lands either in
// an edge or in exactly one of these buckets.
struct BuildCounts {
    std::size_t unresolved = 0;             // counterparty outside the group map
    std::size_t intra_group = 0;            // both endpoints under one head
    std::size_t no_maturity = 0;            // maturity absent, long-term flag off
    std::size_t non_positive_maturity = 0;  // maturity on or before origination
    std::size_t unknown_isin = 0;           // holding without a security reference
    std::size_t out_of_sample = 0;          // issuer on the wrong side of the node set
    std::size_t inactive = 0;               // SFT not open at the snapshot date
    std::size_t kind_excluded = 0;          // SFT kind outside the selection

    std::size_t total() const {
        return unresolved + intra_group + no_maturity + non_positive_maturity + unknown_isin +
               out_of_sample + inactive + kind_excluded;
    }
};

struct CreditLayers {
    Layer st;
    Layer lt;
};

// Splits loans into the short- and long-term credit layers by initial
// maturity: at least `cutoff` months from origination is long-term, a
// strictly positive shorter span is short-term. Loans without a maturity are
// dropped unless `unspecified_long_term`; zero or negative spans are always
// dropped. Edges run creditor -> debtor, weights in EUR aggregated at cent
// precision.
CreditLayers build_credit_layers(const std::vector<ingest::LoanRecord>& loans,
                                 const NodeSpace& space, MaturityCutoff cutoff,
                                 bool unspecified_long_term, bool reject_unresolved,
                                 BuildCounts& counts);

// Cross-holdings of securities issued inside the node set: directed edge
// holder -> issuer, debt and equity pooled. Holdings of out-of-sample
// issuers are counted out (they feed the overlapping layer instead).
Layer build_cross_securities_layer(const std::vector<ingest::HoldingRecord>& holdings,
                                   const std::vector<ingest::SecurityRef>& refs,
                                   const NodeSpace& space, bool reject_unresolved,
                                   BuildCounts& counts);

// Secured funding open at `as_of`, restricted to `kinds`: directed edge
// collateral taker -> collateral giver weighted by open amount.
Layer build_short_term_funding_layer(const std::vector<ingest::SftRecord>& sfts,
                                     const NodeSpace& space, Date as_of,
                                     const std::set<ingest::SftKind>& kinds,
                                     bool reject_unresolved, BuildCounts& counts);

// Portfolio overlap through out-of-sample issuers: undirected edge {i,j}
// weighted by the sum over external issuers of the smaller of the two
// positions. Pairs with no common issuer get no edge.
Layer build_overlapping_portfolio_layer(const std::vector<ingest::HoldingRecord>& holdings,
                                        const std::vector<ingest::SecurityRef>& refs,
                                        const NodeSpace& space, bool reject_unresolved,
                                        BuildCounts& counts);

// Drops every edge whose endpoints share a group head; returns how many were
// removed. A no-op at group level, where distinct nodes are distinct heads.
std::size_t strip_intra_group(Layer& layer, const NodeSpace& space);

struct BuildInputs {
    std::vector<ingest::LoanRecord> loans;
    std::vector<ingest::HoldingRecord> holdings;
    std::vector<ingest::SecurityRef> securities;
    std::vector<ingest::SftRecord> sfts;
};

struct BuildOptions {
    Level level = Level::group;
    MaturityCutoff cutoff{};
    bool unspecified_maturity_is_long_term = false;
    bool reject_unresolved = false;  // default: drop and count
    std::set<ingest::SftKind> sft_kinds{ingest::SftKind::repo, ingest::SftKind::buy_sellback};
    Date as_of;  // snapshot date for the funding layer
};

struct BuildReport {
    std::map<LayerName, BuildCounts> counts;  // flat layer carries no counts
};

// Runs all five market-layer builders over one record bundle and appends the
// flattened layer. Profiles attach per node; at entity level each entity
// carries its head's consolidated profile.
MultiLayerNetwork build_network(const BuildInputs& inputs, const registry::GroupMap& groups,
                                const std::map<std::string, registry::GroupProfile>& profiles,
                                const BuildOptions& options, BuildReport* report = nullptr);

}  // namespace netstrata::net
