#include "netstrata/netbuild.hpp"

#include <algorithm>

#include "netstrata/error.hpp"

namespace netstrata::net {

namespace {

// Cent-level accumulator keeps layer aggregation exact and order-free.
using CentEdges = std::map<EdgeKey, long long>;

Layer to_layer(LayerName name, bool directed, const CentEdges& cents) {
    Layer layer;
    layer.name = name;
    layer.directed = directed;
    for (const auto& [key, c] : cents)
        if (c > 0) layer.add_weight(key.first, key.second, static_cast<double>(c) / 100.0);
    return layer;
}

std::optional<NodeIndex> resolve_or_count(const NodeSpace& space, const std::string& id,
                                          bool reject, BuildCounts& counts) {
    auto idx = space.resolve(id);
    if (!idx) {
        if (reject) fail("netbuild.unresolved", "unresolvable counterparty id: " + id);
        ++counts.unresolved;
    }
    return idx;
}

}  // namespace

NodeSpace NodeSpace::make(const registry::GroupMap& groups, Level level) {
    NodeSpace space;
    space.level = level;
    space.groups = &groups;
    if (level == Level::group) {
        space.nodes.assign(groups.head_ids.begin(), groups.head_ids.end());
    } else {
        for (const auto& [id, head] : groups.membership) space.nodes.push_back(id);
    }
    // std::set / std::map iteration is already sorted and unique.
    return space;
}

std::optional<NodeIndex> NodeSpace::resolve(const std::string& id) const {
    auto head = groups->head_of(id);
    if (!head) return std::nullopt;
    const std::string& target = level == Level::group ? *head : id;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), target);
    if (it == nodes.end() || *it != target) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes.begin());
}

bool NodeSpace::same_group(const std::string& a, const std::string& b) const {
    auto ha = groups->head_of(a);
    auto hb = groups->head_of(b);
    return ha && hb && *ha == *hb;
}

CreditLayers build_credit_layers(const std::vector<ingest::LoanRecord>& loans,
                                 const NodeSpace& space, MaturityCutoff cutoff,
                                 bool unspecified_long_term, bool reject_unresolved,
                                 BuildCounts& counts) {
    if (cutoff.months < 1) fail("netbuild.cutoff", "maturity cutoff must be at least one month");
    CentEdges st, lt;
    for (const auto& loan : loans) {
        auto src = resolve_or_count(space, loan.creditor_id, reject_unresolved, counts);
        if (!src) continue;
        auto dst = resolve_or_count(space, loan.debtor_id, reject_unresolved, counts);
        if (!dst) continue;
        bool long_term;
        if (!loan.maturity_date) {
            if (!unspecified_long_term) {
                ++counts.no_maturity;
                continue;
            }
            long_term = true;
        } else if (!(loan.origination_date < *loan.maturity_date)) {
            ++counts.non_positive_maturity;
            continue;
        } else {
            long_term = *loan.maturity_date >= loan.origination_date.add_months(cutoff.months);
        }
        if (space.same_group(loan.creditor_id, loan.debtor_id)) {
            ++counts.intra_group;
            continue;
        }
        (long_term ? lt : st)[{*src, *dst}] += loan.outstanding_nominal.cents;
    }
    CreditLayers out;
    out.st = to_layer(LayerName::st_cred, true, st);
    out.lt = to_layer(LayerName::lt_cred, true, lt);
    return out;
}

Layer build_cross_securities_layer(const std::vector<ingest::HoldingRecord>& holdings,
                                   const std::vector<ingest::SecurityRef>& refs,
                                   const NodeSpace& space, bool reject_unresolved,
                                   BuildCounts& counts) {
    std::map<std::string, const ingest::SecurityRef*> by_isin;
    for (const auto& ref : refs) by_isin[ref.isin] = &ref;
    CentEdges cents;
    for (const auto& h : holdings) {
        auto holder = resolve_or_count(space, h.holder_id, reject_unresolved, counts);
        if (!holder) continue;
        auto rit = by_isin.find(h.isin);
        if (rit == by_isin.end()) {
            if (reject_unresolved) fail("netbuild.isin", "holding references unknown ISIN: " + h.isin);
            ++counts.unknown_isin;
            continue;
        }
        const std::string& issuer_id = rit->second->issuer_id;
        auto issuer = space.resolve(issuer_id);
        if (!issuer) {
            ++counts.out_of_sample;  // external issuer: overlapping-layer material
            continue;
        }
        if (space.same_group(h.holder_id, issuer_id)) {
            ++counts.intra_group;
            continue;
        }
        cents[{*holder, *issuer}] += h.market_value.cents;
    }
    return to_layer(LayerName::cross_sec, true, cents);
}

Layer build_short_term_funding_layer(const std::vector<ingest::SftRecord>& sfts,
                                     const NodeSpace& space, Date as_of,
                                     const std::set<ingest::SftKind>& kinds,
                                     bool reject_unresolved, BuildCounts& counts) {
    CentEdges cents;
    for (const auto& t : sfts) {
        if (!kinds.count(t.kind)) {
            ++counts.kind_excluded;
            continue;
        }
        if (t.open_date > as_of || (t.close_date && *t.close_date <= as_of)) {
            ++counts.inactive;
            continue;
        }
        auto taker = resolve_or_count(space, t.collateral_taker_id, reject_unresolved, counts);
        if (!taker) continue;
        auto giver = resolve_or_count(space, t.collateral_giver_id, reject_unresolved, counts);
        if (!giver) continue;
        if (space.same_group(t.collateral_taker_id, t.collateral_giver_id)) {
            ++counts.intra_group;
            continue;
        }
        cents[{*taker, *giver}] += t.open_amount.cents;
    }
    return to_layer(LayerName::st_fund, true, cents);
}

Layer build_overlapping_portfolio_layer(const std::vector<ingest::HoldingRecord>& holdings,
                                        const std::vector<ingest::SecurityRef>& refs,
                                        const NodeSpace& space, bool reject_unresolved,
                                        BuildCounts& counts) {
    std::map<std::string, const ingest::SecurityRef*> by_isin;
    for (const auto& ref : refs) by_isin[ref.isin] = &ref;
    // positions[u] = per-node total market value in securities of external issuer u
    std::map<std::string, std::map<NodeIndex, long long>> positions;
    for (const auto& h : holdings) {
        auto holder = resolve_or_count(space, h.holder_id, reject_unresolved, counts);
        if (!holder) continue;
        auto rit = by_isin.find(h.isin);
        if (rit == by_isin.end()) {
            if (reject_unresolved) fail("netbuild.isin", "holding references unknown ISIN: " + h.isin);
            ++counts.unknown_isin;
            continue;
        }
        if (space.resolve(rit->second->issuer_id)) {
            ++counts.out_of_sample;  // in-sample issuer: cross-securities material
            continue;
        }
        positions[rit->second->issuer_id][*holder] += h.market_value.cents;
    }
    CentEdges cents;
    for (const auto& [issuer, holders] : positions) {
        for (auto i = holders.begin(); i != holders.end(); ++i) {
            auto j = i;
            for (++j; j != holders.end(); ++j) {
                long long common = std::min(i->second, j->second);
                if (common > 0) cents[{i->first, j->first}] += common;
            }
        }
    }
    return to_layer(LayerName::ovrl_portfl, false, cents);
}

std::size_t strip_intra_group(Layer& layer, const NodeSpace& space) {
    std::size_t removed = 0;
    for (auto it = layer.edges.begin(); it != layer.edges.end();) {
        const std::string& a = space.nodes[it->first.first];
        const std::string& b = space.nodes[it->first.second];
        if (space.same_group(a, b)) {
            it = layer.edges.erase(it);
            ++removed;
        } else {
            ++it;
        }
    }
    return removed;
}

MultiLayerNetwork build_network(const BuildInputs& inputs, const registry::GroupMap& groups,
                                const std::map<std::string, registry::GroupProfile>& profiles,
                                const BuildOptions& options, BuildReport* report) {
    NodeSpace space = NodeSpace::make(groups, options.level);
    if (space.nodes.empty()) fail("netbuild.nodes", "group map yields an empty node set");

    MultiLayerNetwork network;
    network.nodes = space.nodes;
    network.level = options.level;

    BuildReport local;
    BuildReport& rep = report ? *report : local;

    BuildCounts credit;
    auto layers = build_credit_layers(inputs.loans, space, options.cutoff,
                                      options.unspecified_maturity_is_long_term,
                                      options.reject_unresolved, credit);
    rep.counts[LayerName::st_cred] = credit;
    rep.counts[LayerName::lt_cred] = BuildCounts{};  // shared pass; tallies sit on st_cred
    network.layers[LayerName::st_cred] = std::move(layers.st);
    network.layers[LayerName::lt_cred] = std::move(layers.lt);

    BuildCounts cross;
    network.layers[LayerName::cross_sec] = build_cross_securities_layer(
        inputs.holdings, inputs.securities, space, options.reject_unresolved, cross);
    rep.counts[LayerName::cross_sec] = cross;

    BuildCounts fund;
    network.layers[LayerName::st_fund] = build_short_term_funding_layer(
        inputs.sfts, space, options.as_of, options.sft_kinds, options.reject_unresolved, fund);
    rep.counts[LayerName::st_fund] = fund;

    BuildCounts ovrl;
    network.layers[LayerName::ovrl_portfl] = build_overlapping_portfolio_layer(
        inputs.holdings, inputs.securities, space, options.reject_unresolved, ovrl);
    rep.counts[LayerName::ovrl_portfl] = ovrl;

    network.layers[LayerName::flat] = flatten(network);

    for (const auto& id : network.nodes) {
        const std::string& head =
            options.level == Level::group ? id : *groups.head_of(id);
        auto pit = profiles.find(head);
        if (pit != profiles.end()) {
            auto profile = pit->second;
            profile.head_id = head;
            network.profiles[id] = std::move(profile);
        }
    }
    return network;
}

}  // namespace netstrata::net
