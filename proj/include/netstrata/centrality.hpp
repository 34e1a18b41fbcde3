#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netstrata/heavytail.hpp"
#include "netstrata/network.hpp"

namespace netstrata::cent {

enum class Measure { in_strength, out_strength, pagerank, hub, authority, betweenness };

const char* to_string(Measure measure);
std::optional<Measure> parse_measure(const std::string& s);
const std::vector<Measure>& all_measures();

struct CentralityVector {
    Measure measure = Measure::pagerank;
    std::string layer;
    std::map<std::string, double> scores;  // every network node, zero-filled
};

// Power iteration with uniform teleport on the weight-proportional
// transition matrix; dangling mass spreads uniformly. Undirected layers are
// symmetrized first. Fails after 1e4 iterations without L1 convergence.
CentralityVector pagerank(const net::MultiLayerNetwork& network, net::LayerName name,
                          double damping = 0.85, double tol = 1e-10);

struct HitsResult {
    CentralityVector hub;
    CentralityVector authority;
};

// Alternating weighted hub/authority iteration, L2-normalized each step; a
// weightless layer yields uniform unit vectors. Undirected layers are
// symmetrized first.
HitsResult hits(const net::MultiLayerNetwork& network, net::LayerName name, double tol = 1e-10);

// Sum of incident weights per node in the given direction; undirected
// layers ignore direction.
CentralityVector strength(const net::MultiLayerNetwork& network, net::LayerName name,
                          ht::Direction direction);

// Unweighted shortest-path betweenness (Brandes), direction respected,
// ordered-pair counting, normalized by (N-1)(N-2). All zeros when N < 3.
CentralityVector betweenness(const net::MultiLayerNetwork& network, net::LayerName name);

CentralityVector compute(const net::MultiLayerNetwork& network, net::LayerName name,
                         Measure measure);

// Kendall tau-b over index-paired score vectors (Knight's O(n log n)
// inversion count). A constant vector on either side is undefined.
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b);
double kendall_tau(const CentralityVector& a, const CentralityVector& b);

struct RankCorrelationMatrix {
    Measure measure = Measure::pagerank;
    std::vector<std::string> layers;        // row and column order
    std::vector<std::vector<double>> tau;   // symmetric, unit diagonal
};

// Tau-b between the measure's rankings on every pair of layers present.
RankCorrelationMatrix cross_layer_matrix(const net::MultiLayerNetwork& network,
                                         Measure measure);

struct TopEntry {
    std::size_t rank = 0;  // 1-based
    std::string node_id;
    double score = 0.0;
    std::optional<double> total_assets;
    bool tied = false;  // shares its score with a neighbor in the ranking
};

// Highest k scores, descending, ties broken by node id and flagged.
std::vector<TopEntry> top_k(const CentralityVector& vector, std::size_t k,
                            const std::map<std::string, registry::GroupProfile>& profiles);

}  // namespace netstrata::cent
