#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netstrata/registry.hpp"

namespace netstrata::net {

enum class LayerName { st_cred, lt_cred, cross_sec, st_fund, ovrl_portfl, flat };

const char* to_string(LayerName name);
std::optional<LayerName> parse_layer_name(const std::string& s);

// The five market layers in presentation order, without the flattened layer.
const std::vector<LayerName>& market_layers();
// All six, flattened layer last.
const std::vector<LayerName>& all_layers();

enum class Level { group, entity };
const char* to_string(Level level);
std::optional<Level> parse_level(const std::string& s);

using NodeIndex = std::uint32_t;
using EdgeKey = std::pair<NodeIndex, NodeIndex>;

// One weighted edge set over the shared node list. Undirected layers store
// each pair once with src < dst; no self-loops, weights > 0.
struct Layer {
    LayerName name = LayerName::flat;
    bool directed = true;
    std::map<EdgeKey, double> edges;

    // Accumulates weight on an edge, canonicalizing undirected pairs.
    // Rejects self-loops and non-positive weights.
    void add_weight(NodeIndex src, NodeIndex dst, double w);

    double total_weight() const;
    std::size_t edge_count() const { return edges.size(); }
};

struct MaturityCutoff {
    int months = 3;  // >= 1
};

// Fixed node list shared by every layer; nodes with no edges in a layer are
// simply isolated there.
struct MultiLayerNetwork {
    std::vector<std::string> nodes;  // sorted, unique
    Level level = Level::group;
    std::map<LayerName, Layer> layers;
    std::map<std::string, registry::GroupProfile> profiles;

    NodeIndex index_of(const std::string& node_id) const;  // throws on unknown id
    const Layer& layer(LayerName name) const;              // throws when absent
};

// Expands an undirected layer into its directed symmetric form: every pair
// appears in both orientations at the original weight. Rejects directed input.
Layer symmetrize(const Layer& layer);

// Edge-wise weight sum across every non-flat layer, undirected layers
// entering in symmetrized form.
Layer flatten(const MultiLayerNetwork& network);

// JSON interchange with lexicographic node and edge ordering.
void to_json_stream(const MultiLayerNetwork& network, std::ostream& out);
MultiLayerNetwork from_json_stream(std::istream& in);

}  // namespace netstrata::net
