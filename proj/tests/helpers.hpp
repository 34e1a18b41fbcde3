#pragma once

// Small construction helpers shared by the test files.

#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include <netstrata/network.hpp>
#include <netstrata/rng.hpp>

namespace testutil {

namespace net = netstrata::net;

inline std::string node_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    return buf;
}

inline std::vector<std::string> node_list(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(node_name(i));
    return out;
}

using EdgeSpec = std::tuple<net::NodeIndex, net::NodeIndex, double>;

inline net::Layer make_layer(net::LayerName name, bool directed,
                             const std::vector<EdgeSpec>& edges) {
    net::Layer layer;
    layer.name = name;
    layer.directed = directed;
    for (const auto& [src, dst, w] : edges) layer.add_weight(src, dst, w);
    return layer;
}

inline net::MultiLayerNetwork make_network(std::size_t n_nodes,
                                           const std::vector<net::Layer>& layers,
                                           net::Level level = net::Level::group) {
    net::MultiLayerNetwork network;
    network.nodes = node_list(n_nodes);
    network.level = level;
    for (const auto& layer : layers) network.layers[layer.name] = layer;
    return network;
}

// Random layer over n nodes: each ordered (directed) or unordered
// (undirected) pair appears with probability p, weights uniform in (0, 10].
inline net::Layer random_layer(netstrata::Rng& rng, std::size_t n, bool directed, double p,
                               net::LayerName name = net::LayerName::st_cred) {
    net::Layer layer;
    layer.name = name;
    layer.directed = directed;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            if (rng.uniform() >= p) continue;
            layer.add_weight(static_cast<net::NodeIndex>(i), static_cast<net::NodeIndex>(j),
                            10.0 * rng.uniform_pos());
        }
    return layer;
}

}  // namespace testutil
