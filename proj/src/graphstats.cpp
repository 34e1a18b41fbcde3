#include "netstrata/graphstats.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>
#include <ostream>

#include "netstrata/error.hpp"

namespace netstrata::stats {

namespace {

// Unique-neighbor lists of the undirected projection.
std::vector<std::vector<net::NodeIndex>> projection(const net::Layer& layer,
                                                    std::size_t n_nodes) {
    std::vector<std::vector<net::NodeIndex>> adj(n_nodes);
    for (const auto& [key, w] : layer.edges) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

std::vector<std::vector<net::NodeIndex>> out_neighbors(const net::Layer& layer,
                                                       std::size_t n_nodes) {
    std::vector<std::vector<net::NodeIndex>> adj(n_nodes);
    for (const auto& [key, w] : layer.edges) {
        adj[key.first].push_back(key.second);
        if (!layer.directed) adj[key.second].push_back(key.first);
    }
    return adj;
}

// Component label per node, labels assigned in discovery order from node 0.
std::vector<int> component_labels(const net::Layer& layer, std::size_t n_nodes, int& count) {
    auto adj = projection(layer, n_nodes);
    std::vector<int> label(n_nodes, -1);
    count = 0;
    std::deque<net::NodeIndex> queue;
    for (std::size_t start = 0; start < n_nodes; ++start) {
        if (label[start] >= 0) continue;
        label[start] = count;
        queue.push_back(static_cast<net::NodeIndex>(start));
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : adj[u])
                if (label[v] < 0) {
                    label[v] = count;
                    queue.push_back(v);
                }
        }
        ++count;
    }
    return label;
}

int largest_component(const std::vector<int>& label, int count, std::size_t& members) {
    std::vector<std::size_t> sizes(count, 0);
    for (int l : label) ++sizes[static_cast<std::size_t>(l)];
    int best = 0;
    for (int c = 1; c < count; ++c)
        if (sizes[static_cast<std::size_t>(c)] > sizes[static_cast<std::size_t>(best)]) best = c;
    members = sizes[static_cast<std::size_t>(best)];
    return best;
}

double watts_strogatz_local(const std::vector<std::vector<net::NodeIndex>>& adj,
                            std::vector<char>& seen, net::NodeIndex i) {
    const auto& nbrs = adj[i];
    std::size_t k = nbrs.size();
    if (k < 2) return 0.0;
    for (auto v : nbrs) seen[v] = 1;
    std::size_t links = 0;
    for (auto j : nbrs)
        for (auto l : adj[j])
            if (l > j && seen[l]) ++links;
    for (auto v : nbrs) seen[v] = 0;
    return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

}  // namespace

double density(const net::Layer& layer, std::size_t n_nodes) {
    if (n_nodes < 2) fail("stats.density", "density needs at least two nodes");
    double pairs = static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1);
    double e = static_cast<double>(layer.edge_count());
    return layer.directed ? e / pairs : 2.0 * e / pairs;
}

std::vector<ComponentInfo> connected_components(const net::Layer& layer, std::size_t n_nodes) {
    int count = 0;
    auto label = component_labels(layer, n_nodes, count);
    std::vector<ComponentInfo> comps(static_cast<std::size_t>(count));
    for (int l : label) ++comps[static_cast<std::size_t>(l)].n_nodes;
    for (const auto& [key, w] : layer.edges)
        ++comps[static_cast<std::size_t>(label[key.first])].n_edges;
    std::stable_sort(comps.begin(), comps.end(), [](const ComponentInfo& a, const ComponentInfo& b) {
        if (a.n_nodes != b.n_nodes) return a.n_nodes > b.n_nodes;
        return a.n_edges > b.n_edges;
    });
    return comps;
}

int diameter(const net::Layer& layer, std::size_t n_nodes) {
    int count = 0;
    auto label = component_labels(layer, n_nodes, count);
    std::size_t members = 0;
    int target = largest_component(label, count, members);
    if (members < 2) fail("stats.diameter", "largest component is a single node");
    auto adj = projection(layer, n_nodes);
    std::vector<int> dist(n_nodes);
    int best = 0;
    std::deque<net::NodeIndex> queue;
    for (std::size_t s = 0; s < n_nodes; ++s) {
        if (label[s] != target) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.push_back(static_cast<net::NodeIndex>(s));
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    best = std::max(best, dist[v]);
                    queue.push_back(v);
                }
        }
    }
    return best;
}

double avg_clustering(const net::Layer& layer, std::size_t n_nodes, ClusteringMode mode) {
    if (n_nodes == 0) return 0.0;
    double sum = 0.0;
    if (mode == ClusteringMode::undirected_projection) {
        auto adj = projection(layer, n_nodes);
        std::vector<char> seen(n_nodes, 0);
        for (std::size_t i = 0; i < n_nodes; ++i)
            sum += watts_strogatz_local(adj, seen, static_cast<net::NodeIndex>(i));
    } else {
        if (!layer.directed)
            fail("stats.clustering", "directed clustering needs a directed layer");
        // S = A + A^T with entries {0,1,2}; local value (S^3)_ii over
        // 2(k_tot(k_tot - 1) - 2 k_bi).
        std::vector<std::uint8_t> s(n_nodes * n_nodes, 0);
        auto at = [&](std::size_t i, std::size_t j) -> std::uint8_t& {
            return s[i * n_nodes + j];
        };
        std::vector<std::size_t> k_tot(n_nodes, 0);
        for (const auto& [key, w] : layer.edges) {
            ++at(key.first, key.second);
            ++at(key.second, key.first);
            ++k_tot[key.first];
            ++k_tot[key.second];
        }
        auto und = projection(layer, n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            std::size_t k_bi = 0;
            for (auto j : und[i])
                if (at(i, j) == 2) ++k_bi;
            double denom =
                2.0 * (static_cast<double>(k_tot[i]) * static_cast<double>(k_tot[i] - 1) -
                       2.0 * static_cast<double>(k_bi));
            if (k_tot[i] < 2 || denom <= 0.0) continue;
            double paths = 0.0;
            for (auto j : und[i])
                for (auto l : und[i]) {
                    if (j == l) continue;
                    paths += static_cast<double>(at(i, j)) * static_cast<double>(at(j, l)) *
                             static_cast<double>(at(l, i));
                }
            sum += paths / denom;
        }
    }
    return sum / static_cast<double>(n_nodes);
}

double reciprocity(const net::Layer& layer) {
    if (!layer.directed) fail("stats.reciprocity", "reciprocity needs a directed layer");
    if (layer.edges.empty()) return 0.0;
    std::size_t mutual = 0;
    for (const auto& [key, w] : layer.edges)
        if (layer.edges.count({key.second, key.first})) ++mutual;
    return static_cast<double>(mutual) / static_cast<double>(layer.edge_count());
}

double global_efficiency(const net::Layer& layer, std::size_t n_nodes) {
    if (n_nodes < 2) fail("stats.efficiency", "global efficiency needs at least two nodes");
    auto adj = out_neighbors(layer, n_nodes);
    double sum = 0.0;
    std::vector<int> dist(n_nodes);
    std::deque<net::NodeIndex> queue;
    for (std::size_t s = 0; s < n_nodes; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.push_back(static_cast<net::NodeIndex>(s));
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    sum += 1.0 / static_cast<double>(dist[v]);
                    queue.push_back(v);
                }
        }
    }
    return sum / (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

double herfindahl(const net::Layer& layer, std::size_t n_nodes) {
    std::vector<double> strength(n_nodes, 0.0);
    for (const auto& [key, w] : layer.edges) {
        strength[key.first] += w;
        strength[key.second] += w;
    }
    double total = std::accumulate(strength.begin(), strength.end(), 0.0);
    if (!(total > 0.0)) fail("stats.herfindahl", "zero total weight");
    double h = 0.0;
    for (double s : strength) {
        double share = s / total;
        h += share * share;
    }
    return h;
}

GraphStats layer_stats(const net::Layer& layer, std::size_t n_nodes) {
    GraphStats out;
    out.n_nodes = n_nodes;
    out.n_edges = layer.edge_count();
    auto comps = connected_components(layer, n_nodes);
    out.n_components = comps.size();
    if (!comps.empty() && n_nodes > 0) {
        out.largest_comp_node_share =
            static_cast<double>(comps.front().n_nodes) / static_cast<double>(n_nodes);
        out.largest_comp_edge_share =
            out.n_edges == 0 ? 0.0
                             : static_cast<double>(comps.front().n_edges) /
                                   static_cast<double>(out.n_edges);
    }
    out.diameter_largest_comp =
        (!comps.empty() && comps.front().n_nodes >= 2) ? diameter(layer, n_nodes) : 0;
    out.avg_clustering = avg_clustering(
        layer, n_nodes,
        layer.directed ? ClusteringMode::directed : ClusteringMode::undirected_projection);
    if (layer.directed) out.reciprocity = reciprocity(layer);
    out.density = density(layer, n_nodes);
    out.global_efficiency = global_efficiency(layer, n_nodes);
    out.herfindahl = layer.total_weight() > 0.0 ? herfindahl(layer, n_nodes) : 0.0;
    return out;
}

std::vector<NodeProfile> degree_clustering_profile(const net::MultiLayerNetwork& network,
                                                   net::LayerName name) {
    const auto& layer = network.layer(name);
    std::size_t n = network.nodes.size();
    auto adj = projection(layer, n);
    std::vector<char> seen(n, 0);
    std::vector<NodeProfile> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (adj[i].empty()) continue;
        NodeProfile p;
        p.node_id = network.nodes[i];
        p.degree_k = adj[i].size();
        p.clustering_cc = watts_strogatz_local(adj, seen, static_cast<net::NodeIndex>(i));
        auto pit = network.profiles.find(p.node_id);
        if (pit != network.profiles.end() && pit->second.total_assets)
            p.total_assets = pit->second.total_assets->eur();
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<StatsRow> stats_suite(const net::MultiLayerNetwork& network) {
    std::size_t n = network.nodes.size();
    std::vector<StatsRow> rows;
    for (auto name : net::all_layers()) {
        auto it = network.layers.find(name);
        if (it == network.layers.end()) continue;
        rows.push_back({net::to_string(name), layer_stats(it->second, n)});
        if (name == net::LayerName::ovrl_portfl && !it->second.directed)
            rows.push_back({"ovrl_portfl_dir", layer_stats(net::symmetrize(it->second), n)});
    }
    // Presentation order puts the flattened layer last; all_layers() already
    // does, and the symmetrized overlap row slots in after its source.
    return rows;
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
    out << "layer,n_nodes,n_edges,n_components,largest_comp_node_share,"
           "largest_comp_edge_share,diameter_largest_comp,avg_clustering,reciprocity,"
           "density,global_efficiency,herfindahl\n";
    char buf[64];
    auto frac = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    for (const auto& r : rows) {
        out << r.row << ',' << r.stats.n_nodes << ',' << r.stats.n_edges << ','
            << r.stats.n_components << ',' << frac(r.stats.largest_comp_node_share) << ','
            << frac(r.stats.largest_comp_edge_share) << ',' << r.stats.diameter_largest_comp
            << ',' << frac(r.stats.avg_clustering) << ','
            << (r.stats.reciprocity ? frac(*r.stats.reciprocity) : std::string()) << ','
            << frac(r.stats.density) << ',' << frac(r.stats.global_efficiency) << ','
            << frac(r.stats.herfindahl) << '\n';
    }
}

void write_profile_csv(std::ostream& out, const std::vector<NodeProfile>& profiles) {
    out << "node_id,k,cc,total_assets\n";
    char buf[64];
    for (const auto& p : profiles) {
        std::snprintf(buf, sizeof buf, "%.6f", p.clustering_cc);
        out << p.node_id << ',' << p.degree_k << ',' << buf << ',';
        if (p.total_assets) {
            std::snprintf(buf, sizeof buf, "%.2f", *p.total_assets);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace netstrata::stats
