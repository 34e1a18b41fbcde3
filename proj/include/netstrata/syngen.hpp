#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "netstrata/heavytail.hpp"
#include "netstrata/netbuild.hpp"

namespace netstrata::syn {

// Edge-weight law in model units (1 unit = `scale` EUR), truncated below at
// x_min like the fitted candidates.
struct WeightSpec {
    ht::CandidateKind kind = ht::CandidateKind::truncated_power_law;
    std::map<std::string, double> params{{"alpha", 2.0}, {"lambda", 0.06}};
    double x_min = 1.0;
};

// Each group-level relationship is realized as one or more granular records
// between member entities, so entity-level samples are finer than the group
// topology while group-level edge counts stay pinned to the density target.
struct LayerSpec {
    double density = 0.05;  // group-level target in (0,1]
    WeightSpec weights;
    std::size_t records_min = 1;  // granular records per group-level edge
    std::size_t records_max = 1;
};

enum class Attachment { uniform, preferential };

struct SynConfig {
    std::size_t n_groups = 114;
    std::size_t entities_min = 40;  // entities per group, head included
    std::size_t entities_max = 56;
    std::size_t n_external = 6;  // registry noise below the control threshold
    double scale = 1e7;          // EUR per model weight unit
    Date as_of;                  // defaults() pins the end-of-June-2021 snapshot
    Attachment attachment = Attachment::uniform;
    std::map<net::LayerName, LayerSpec> layers;  // the five market layers
    std::uint64_t seed = 1;

    // Paper-shaped defaults: 114 groups and per-layer densities that realize
    // the reference edge counts exactly at that size.
    static SynConfig defaults();
};

struct SynOutput {
    std::vector<registry::Entity> entities;
    std::vector<registry::ControlLink> links;
    std::set<std::string> heads;
    std::vector<registry::BalanceRecord> balances;
    net::BuildInputs records;

    // Ground truth for oracles: the intended partition, realized group-level
    // edge counts, and exact cross-group cent totals per layer.
    std::map<std::string, std::string> partition;
    std::map<net::LayerName, std::size_t> edge_counts;
    std::map<net::LayerName, long long> ledger_cents;
    std::vector<std::string> external_entities;
};

// Deterministic generation: identical config (seed included) reproduces the
// bundle bit for bit.
SynOutput generate(const SynConfig& config);

// Writes the CSV bundle plus ground_truth.json into `directory` (created if
// missing): entities, control_links, group_heads, balance_sheet, loans,
// holdings, securities, sft.
void write_bundle(const SynOutput& output, const SynConfig& config,
                  const std::string& directory);

}  // namespace netstrata::syn
