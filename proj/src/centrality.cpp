#include "netstrata/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "netstrata/error.hpp"

namespace netstrata::cent {

namespace {

// Directed weighted edge list with undirected layers expanded to both
// orientations, so every measure sees one canonical form.
struct Digraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<net::NodeIndex, double>>> out;  // per source

    static Digraph make(const net::MultiLayerNetwork& network, net::LayerName name) {
        const auto& layer = network.layer(name);
        Digraph g;
        g.n = network.nodes.size();
        g.out.resize(g.n);
        for (const auto& [key, w] : layer.edges) {
            g.out[key.first].push_back({key.second, w});
            if (!layer.directed) g.out[key.second].push_back({key.first, w});
        }
        return g;
    }
};

CentralityVector wrap(const net::MultiLayerNetwork& network, net::LayerName name,
                      Measure measure, const std::vector<double>& values) {
    CentralityVector v;
    v.measure = measure;
    v.layer = net::to_string(name);
    for (std::size_t i = 0; i < network.nodes.size(); ++i)
        v.scores[network.nodes[i]] = values[i];
    return v;
}

// Merge-sort inversion count; strict descents only, so ties never count.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, scratch, lo, mid) +
                        count_inversions(v, scratch, mid, hi);
    std::size_t a = lo, b = mid, o = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) {
            inv += mid - a;
            scratch[o++] = v[b++];
        } else {
            scratch[o++] = v[a++];
        }
    }
    while (a < mid) scratch[o++] = v[a++];
    while (b < hi) scratch[o++] = v[b++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

const char* to_string(Measure measure) {
    switch (measure) {
        case Measure::in_strength: return "in_strength";
        case Measure::out_strength: return "out_strength";
        case Measure::pagerank: return "pagerank";
        case Measure::hub: return "hub";
        case Measure::authority: return "authority";
        case Measure::betweenness: return "betweenness";
    }
    return "pagerank";
}

std::optional<Measure> parse_measure(const std::string& s) {
    for (auto m : all_measures())
        if (s == to_string(m)) return m;
    return std::nullopt;
}

const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> v{Measure::in_strength, Measure::out_strength,
                                       Measure::pagerank,    Measure::hub,
                                       Measure::authority,   Measure::betweenness};
    return v;
}

CentralityVector pagerank(const net::MultiLayerNetwork& network, net::LayerName name,
                          double damping, double tol) {
    if (!(damping > 0.0 && damping < 1.0))
        fail("centrality.damping", "damping must lie strictly between 0 and 1");
    auto g = Digraph::make(network, name);
    std::size_t n = g.n;
    std::vector<double> out_strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, w] : g.out[i]) out_strength[i] += w;

    std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
    for (int iter = 0; iter < 10000; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (out_strength[i] == 0.0) dangling += x[i];
        double base = (1.0 - damping) / static_cast<double>(n) +
                      damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t i = 0; i < n; ++i) {
            if (out_strength[i] == 0.0) continue;
            double share = damping * x[i] / out_strength[i];
            for (const auto& [j, w] : g.out[i]) next[j] += share * w;
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::fabs(next[i] - x[i]);
        x.swap(next);
        if (diff < tol) return wrap(network, name, Measure::pagerank, x);
    }
    fail("centrality.pagerank", "power iteration did not converge within 10000 iterations");
}

HitsResult hits(const net::MultiLayerNetwork& network, net::LayerName name, double tol) {
    auto g = Digraph::make(network, name);
    std::size_t n = g.n;
    double uniform = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> hub(n, uniform), auth(n, uniform);
    bool any_edge = false;
    for (const auto& lst : g.out) any_edge = any_edge || !lst.empty();
    if (!any_edge) {
        return {wrap(network, name, Measure::hub, hub),
                wrap(network, name, Measure::authority, auth)};
    }
    auto normalize = [](std::vector<double>& v) {
        double norm = 0.0;
        for (double s : v) norm += s * s;
        norm = std::sqrt(norm);
        if (norm == 0.0) return;
        for (double& s : v) s /= norm;
    };
    std::vector<double> next_auth(n), next_hub(n);
    for (int iter = 0; iter < 10000; ++iter) {
        std::fill(next_auth.begin(), next_auth.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [j, w] : g.out[i]) next_auth[j] += w * hub[i];
        normalize(next_auth);
        std::fill(next_hub.begin(), next_hub.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [j, w] : g.out[i]) next_hub[i] += w * next_auth[j];
        normalize(next_hub);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diff += (next_hub[i] - hub[i]) * (next_hub[i] - hub[i]);
            diff += (next_auth[i] - auth[i]) * (next_auth[i] - auth[i]);
        }
        hub.swap(next_hub);
        auth.swap(next_auth);
        if (std::sqrt(diff) < tol)
            return {wrap(network, name, Measure::hub, hub),
                    wrap(network, name, Measure::authority, auth)};
    }
    fail("centrality.hits", "hub/authority iteration did not converge within 10000 iterations");
}

CentralityVector strength(const net::MultiLayerNetwork& network, net::LayerName name,
                          ht::Direction direction) {
    const auto& layer = network.layer(name);
    std::vector<double> values(network.nodes.size(), 0.0);
    for (const auto& [key, w] : layer.edges) {
        if (!layer.directed) {
            values[key.first] += w;
            values[key.second] += w;
        } else if (direction == ht::Direction::out) {
            values[key.first] += w;
        } else {
            values[key.second] += w;
        }
    }
    return wrap(network, name, direction == ht::Direction::in ? Measure::in_strength
                                                              : Measure::out_strength,
                values);
}

CentralityVector betweenness(const net::MultiLayerNetwork& network, net::LayerName name) {
    auto g = Digraph::make(network, name);
    std::size_t n = g.n;
    std::vector<double> score(n, 0.0);
    if (n >= 3) {
        // Brandes accumulation, one BFS per source over unweighted edges.
        std::vector<std::vector<net::NodeIndex>> pred(n);
        std::vector<double> sigma(n), delta(n);
        std::vector<int> dist(n);
        std::vector<net::NodeIndex> order;
        order.reserve(n);
        for (std::size_t s = 0; s < n; ++s) {
            for (auto& p : pred) p.clear();
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(dist.begin(), dist.end(), -1);
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            std::deque<net::NodeIndex> queue{static_cast<net::NodeIndex>(s)};
            while (!queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                order.push_back(u);
                for (const auto& [v, w] : g.out[u]) {
                    if (dist[v] < 0) {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                    if (dist[v] == dist[u] + 1) {
                        sigma[v] += sigma[u];
                        pred[v].push_back(u);
                    }
                }
            }
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                auto v = *it;
                for (auto u : pred[v]) delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v]);
                if (v != s) score[v] += delta[v];
            }
        }
        double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
        for (double& s : score) s /= norm;
    }
    return wrap(network, name, Measure::betweenness, score);
}

CentralityVector compute(const net::MultiLayerNetwork& network, net::LayerName name,
                         Measure measure) {
    switch (measure) {
        case Measure::in_strength: return strength(network, name, ht::Direction::in);
        case Measure::out_strength: return strength(network, name, ht::Direction::out);
        case Measure::pagerank: return pagerank(network, name);
        case Measure::hub: return hits(network, name).hub;
        case Measure::authority: return hits(network, name).authority;
        case Measure::betweenness: return betweenness(network, name);
    }
    fail("centrality.measure", "unknown measure");
}

double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        fail("centrality.tau", "score vectors differ in length");
    std::size_t n = a.size();
    if (n < 2) fail("centrality.tau", "tau needs at least two entries");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (a[i] != a[j]) return a[i] < a[j];
        return b[i] < b[j];
    });
    auto pairs2 = [](std::uint64_t t) { return t * (t - 1) / 2; };
    std::uint64_t n0 = pairs2(n);
    std::uint64_t ties_a = 0, ties_b = 0, ties_ab = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && a[idx[j]] == a[idx[i]]) ++j;
        ties_a += pairs2(j - i);
        for (std::size_t p = i; p < j;) {
            std::size_t q = p;
            while (q < j && b[idx[q]] == b[idx[p]]) ++q;
            ties_ab += pairs2(q - p);
            p = q;
        }
        i = j;
    }
    {
        std::vector<double> sb(b);
        std::sort(sb.begin(), sb.end());
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j < n && sb[j] == sb[i]) ++j;
            ties_b += pairs2(j - i);
            i = j;
        }
    }
    if (ties_a == n0 || ties_b == n0)
        fail("centrality.tau", "tau undefined: a score vector is constant");
    std::vector<double> seq(n), scratch(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = b[idx[i]];
    std::uint64_t discordant = count_inversions(seq, scratch, 0, n);
    // Pairs tied in neither vector split into concordant and discordant.
    double pq = static_cast<double>(n0 - ties_a - ties_b + ties_ab) -
                2.0 * static_cast<double>(discordant);
    double denom = std::sqrt(static_cast<double>(n0 - ties_a)) *
                   std::sqrt(static_cast<double>(n0 - ties_b));
    return pq / denom;
}

double kendall_tau(const CentralityVector& a, const CentralityVector& b) {
    if (a.scores.size() != b.scores.size())
        fail("centrality.tau", "score vectors cover different node sets");
    std::vector<double> va, vb;
    va.reserve(a.scores.size());
    vb.reserve(b.scores.size());
    for (const auto& [id, score] : a.scores) {
        auto it = b.scores.find(id);
        if (it == b.scores.end())
            fail("centrality.tau", "score vectors cover different node sets");
        va.push_back(score);
        vb.push_back(it->second);
    }
    return kendall_tau(va, vb);
}

RankCorrelationMatrix cross_layer_matrix(const net::MultiLayerNetwork& network,
                                         Measure measure) {
    RankCorrelationMatrix m;
    m.measure = measure;
    std::vector<CentralityVector> vectors;
    for (auto name : net::all_layers()) {
        if (!network.layers.count(name)) continue;
        m.layers.push_back(net::to_string(name));
        vectors.push_back(compute(network, name, measure));
    }
    std::size_t k = vectors.size();
    m.tau.assign(k, std::vector<double>(k, 1.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            double t = kendall_tau(vectors[i], vectors[j]);
            m.tau[i][j] = t;
            m.tau[j][i] = t;
        }
    return m;
}

std::vector<TopEntry> top_k(const CentralityVector& vector, std::size_t k,
                            const std::map<std::string, registry::GroupProfile>& profiles) {
    if (k < 1) fail("centrality.topk", "k must be at least 1");
    std::vector<std::pair<std::string, double>> items(vector.scores.begin(),
                                                      vector.scores.end());
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    std::vector<TopEntry> out;
    for (std::size_t i = 0; i < items.size() && i < k; ++i) {
        TopEntry e;
        e.rank = i + 1;
        e.node_id = items[i].first;
        e.score = items[i].second;
        // Ties just past the cut still mark the boundary entry.
        bool prev = i > 0 && items[i - 1].second == items[i].second;
        bool next = i + 1 < items.size() && items[i + 1].second == items[i].second;
        e.tied = prev || next;
        auto pit = profiles.find(e.node_id);
        if (pit != profiles.end() && pit->second.total_assets)
            e.total_assets = pit->second.total_assets->eur();
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace netstrata::cent
