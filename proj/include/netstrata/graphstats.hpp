#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netstrata/network.hpp"

namespace netstrata::stats {

// One table row of layer-level statistics.
struct GraphStats {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::size_t n_components = 0;
    double largest_comp_node_share = 0.0;
    double largest_comp_edge_share = 0.0;
    int diameter_largest_comp = 0;      // 0 when the largest component is a single node
    double avg_clustering = 0.0;
    std::optional<double> reciprocity;  // absent for undirected layers
    double density = 0.0;
    double global_efficiency = 0.0;
    double herfindahl = 0.0;            // 0 on weightless layers
};

struct ComponentInfo {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
};

struct NodeProfile {
    std::string node_id;
    std::size_t degree_k = 0;
    double clustering_cc = 0.0;
    std::optional<double> total_assets;
};

enum class ClusteringMode { undirected_projection, directed };

// E/(N(N-1)) for directed layers, doubled for undirected. Needs N >= 2.
double density(const net::Layer& layer, std::size_t n_nodes);

// Weakly connected components (direction ignored), largest first; isolated
// nodes are singleton components.
std::vector<ComponentInfo> connected_components(const net::Layer& layer, std::size_t n_nodes);

// Longest shortest path inside the largest weak component, measured on its
// undirected projection. Needs that component to span at least two nodes.
int diameter(const net::Layer& layer, std::size_t n_nodes);

// Mean local clustering over all nodes; degree-below-2 nodes contribute 0.
// undirected_projection: triangle share on the projected graph. directed:
// all-motif directed clustering, (A+A^T)^3_ii over 2(k(k-1) - 2k_bi).
double avg_clustering(const net::Layer& layer, std::size_t n_nodes, ClusteringMode mode);

// Share of directed edges whose reverse also exists. Rejects undirected
// layers; 0 on empty ones.
double reciprocity(const net::Layer& layer);

// Mean of 1/d(i,j) over ordered pairs, direction respected, unreachable
// pairs contributing 0. Needs N >= 2.
double global_efficiency(const net::Layer& layer, std::size_t n_nodes);

// Concentration of total strength (in plus out weighted degree): sum of
// squared strength shares. Needs positive total weight.
double herfindahl(const net::Layer& layer, std::size_t n_nodes);

// Full statistics row for one layer, applying the suite conventions noted
// on the GraphStats fields.
GraphStats layer_stats(const net::Layer& layer, std::size_t n_nodes);

// Per-node degree and clustering on the layer's undirected projection,
// joined with total assets; zero-degree nodes are left out.
std::vector<NodeProfile> degree_clustering_profile(const net::MultiLayerNetwork& network,
                                                   net::LayerName name);

struct StatsRow {
    std::string row;  // layer name, with "ovrl_portfl_dir" for the symmetrized variant
    GraphStats stats;
};

// Statistics for every layer present, with the overlapping layer reported
// twice: as stored (undirected) and in symmetrized directed form.
std::vector<StatsRow> stats_suite(const net::MultiLayerNetwork& network);

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);
void write_profile_csv(std::ostream& out, const std::vector<NodeProfile>& profiles);

}  // namespace netstrata::stats
