#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here favors obviousness over speed: dense matrices,
// Floyd-Warshall, O(n^2) pair enumeration, full matrix cubes. Keep graphs
// small when calling into this header.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include <netstrata/graphstats.hpp>
#include <netstrata/network.hpp>

namespace oracle {

namespace net = netstrata::net;

// Dense adjacency view of a layer over the full node list. Undirected layers
// are stored symmetrically so directed algorithms see both orientations.
struct Dense {
    std::size_t n = 0;
    bool directed = true;
    std::vector<std::vector<double>> w;

    static Dense from_layer(const net::Layer& layer, std::size_t n_nodes) {
        Dense d;
        d.n = n_nodes;
        d.directed = layer.directed;
        d.w.assign(n_nodes, std::vector<double>(n_nodes, 0.0));
        for (const auto& [key, weight] : layer.edges) {
            d.w[key.first][key.second] += weight;
            if (!layer.directed) d.w[key.second][key.first] += weight;
        }
        return d;
    }

    bool arc(std::size_t i, std::size_t j) const { return w[i][j] > 0.0; }
    bool und(std::size_t i, std::size_t j) const { return arc(i, j) || arc(j, i); }
};

constexpr int kUnreachable = 1 << 20;

// All-pairs unit-length shortest paths by Floyd-Warshall.
inline std::vector<std::vector<int>> unit_apsp(const Dense& g, bool respect_direction) {
    std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, kUnreachable));
    for (std::size_t i = 0; i < g.n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < g.n; ++j) {
            if (i == j) continue;
            bool connected = respect_direction ? g.arc(i, j) : g.und(i, j);
            if (connected) d[i][j] = 1;
        }
    }
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

struct BruteComponent {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::size_t min_node = 0;  // smallest member index, for discovery-order ties
};

// Weak components from undirected reachability, each with its node count and
// the count of stored edges whose endpoints it contains.
inline std::vector<BruteComponent> brute_components(const net::Layer& layer,
                                                    std::size_t n_nodes) {
    Dense g = Dense::from_layer(layer, n_nodes);
    auto dist = unit_apsp(g, /*respect_direction=*/false);
    std::vector<int> label(n_nodes, -1);
    std::vector<BruteComponent> comps;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (label[i] >= 0) continue;
        BruteComponent c;
        c.min_node = i;
        for (std::size_t j = i; j < n_nodes; ++j)
            if (label[j] < 0 && dist[i][j] < kUnreachable) {
                label[j] = static_cast<int>(comps.size());
                ++c.n_nodes;
            }
        comps.push_back(c);
    }
    for (const auto& [key, w] : layer.edges)
        ++comps[static_cast<std::size_t>(label[key.first])].n_edges;
    return comps;
}

// Components ordered the way the library reports them: nodes descending,
// then edges descending, then first-discovered.
inline std::vector<BruteComponent> brute_components_sorted(const net::Layer& layer,
                                                           std::size_t n_nodes) {
    auto comps = brute_components(layer, n_nodes);
    std::sort(comps.begin(), comps.end(), [](const BruteComponent& a, const BruteComponent& b) {
        if (a.n_nodes != b.n_nodes) return a.n_nodes > b.n_nodes;
        if (a.n_edges != b.n_edges) return a.n_edges > b.n_edges;
        return a.min_node < b.min_node;
    });
    return comps;
}

inline double brute_density(const net::Layer& layer, std::size_t n) {
    double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    double e = static_cast<double>(layer.edges.size());
    return layer.directed ? e / pairs : 2.0 * e / pairs;
}

// Diameter of the first-discovered largest weak component, measured on the
// undirected projection.
inline int brute_diameter(const net::Layer& layer, std::size_t n_nodes) {
    auto comps = brute_components(layer, n_nodes);
    std::size_t best = 0;
    for (std::size_t c = 1; c < comps.size(); ++c)
        if (comps[c].n_nodes > comps[best].n_nodes) best = c;
    Dense g = Dense::from_layer(layer, n_nodes);
    auto dist = unit_apsp(g, /*respect_direction=*/false);
    std::size_t anchor = comps[best].min_node;
    int diam = 0;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (dist[anchor][i] >= kUnreachable) continue;
        for (std::size_t j = 0; j < n_nodes; ++j)
            if (dist[anchor][j] < kUnreachable && dist[i][j] < kUnreachable)
                diam = std::max(diam, dist[i][j]);
    }
    return diam;
}

// Watts-Strogatz clustering on the undirected projection.
inline double brute_projected_clustering(const net::Layer& layer, std::size_t n) {
    Dense g = Dense::from_layer(layer, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> nbrs;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && g.und(i, j)) nbrs.push_back(j);
        std::size_t k = nbrs.size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (g.und(nbrs[a], nbrs[b])) ++links;
        sum += 2.0 * static_cast<double>(links) /
               (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// Fagiolo all-motif directed clustering via a literal matrix cube of
// S = A + A^T.
inline double brute_directed_clustering(const net::Layer& layer, std::size_t n) {
    std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
    for (const auto& [key, w] : layer.edges) {
        s[key.first][key.second] += 1.0;
        s[key.second][key.first] += 1.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double k_tot = 0.0, k_bi = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            k_tot += s[i][j];
            if (s[i][j] == 2.0) k_bi += 1.0;
        }
        double denom = 2.0 * (k_tot * (k_tot - 1.0) - 2.0 * k_bi);
        if (k_tot < 2.0 || denom <= 0.0) continue;
        double cube = 0.0;  // (S^3)_ii
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) cube += s[i][j] * s[j][l] * s[l][i];
        sum += cube / denom;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

inline double brute_reciprocity(const net::Layer& layer, std::size_t n) {
    Dense g = Dense::from_layer(layer, n);
    std::size_t edges = 0, mutual = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !g.arc(i, j)) continue;
            ++edges;
            if (g.arc(j, i)) ++mutual;
        }
    return edges == 0 ? 0.0 : static_cast<double>(mutual) / static_cast<double>(edges);
}

inline double brute_efficiency(const net::Layer& layer, std::size_t n) {
    Dense g = Dense::from_layer(layer, n);
    auto dist = unit_apsp(g, /*respect_direction=*/true);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || dist[i][j] >= kUnreachable) continue;
            sum += 1.0 / static_cast<double>(dist[i][j]);
        }
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline std::vector<double> brute_strengths(const net::Layer& layer, std::size_t n) {
    std::vector<double> s(n, 0.0);
    for (const auto& [key, w] : layer.edges) {
        s[key.first] += w;
        s[key.second] += w;
    }
    return s;
}

inline double brute_herfindahl(const net::Layer& layer, std::size_t n) {
    auto s = brute_strengths(layer, n);
    double total = 0.0;
    for (double v : s) total += v;
    double h = 0.0;
    for (double v : s) h += (v / total) * (v / total);
    return h;
}

// Full statistics row with the suite's conventions for degenerate cases.
inline netstrata::stats::GraphStats brute_layer_stats(const net::Layer& layer,
                                                      std::size_t n_nodes) {
    netstrata::stats::GraphStats out;
    out.n_nodes = n_nodes;
    out.n_edges = layer.edges.size();
    auto comps = brute_components_sorted(layer, n_nodes);
    out.n_components = comps.size();
    out.largest_comp_node_share =
        static_cast<double>(comps.front().n_nodes) / static_cast<double>(n_nodes);
    out.largest_comp_edge_share =
        out.n_edges == 0 ? 0.0
                         : static_cast<double>(comps.front().n_edges) /
                               static_cast<double>(out.n_edges);
    out.diameter_largest_comp = comps.front().n_nodes >= 2 ? brute_diameter(layer, n_nodes) : 0;
    out.avg_clustering = layer.directed ? brute_directed_clustering(layer, n_nodes)
                                        : brute_projected_clustering(layer, n_nodes);
    if (layer.directed) out.reciprocity = brute_reciprocity(layer, n_nodes);
    out.density = brute_density(layer, n_nodes);
    out.global_efficiency = brute_efficiency(layer, n_nodes);
    out.herfindahl = layer.total_weight() > 0.0 ? brute_herfindahl(layer, n_nodes) : 0.0;
    return out;
}

// --- centrality oracles -------------------------------------------------

// Gaussian elimination with partial pivoting; a is destroyed.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

// Stationary PageRank from the linear system x = G x, sum(x) = 1, where G is
// the damped weight-proportional transition matrix with uniform teleport and
// uniformly spread dangling mass.
inline std::vector<double> brute_pagerank(const Dense& g, double damping) {
    std::size_t n = g.n;
    std::vector<double> out_strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out_strength[i] += g.w[i][j];
    std::vector<std::vector<double>> big(n, std::vector<double>(n, 0.0));
    double nn = static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            double transit = out_strength[i] > 0.0 ? g.w[i][j] / out_strength[i] : 1.0 / nn;
            big[j][i] = (1.0 - damping) / nn + damping * transit;
        }
    // Solve (G - I) x = 0 with the last equation replaced by sum(x) = 1.
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = big[i][j] - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    b[n - 1] = 1.0;
    return solve_linear(std::move(a), std::move(b));
}

// Symmetric eigen-decomposition by cyclic Jacobi rotations. Returns
// (eigenvalues, column eigenvectors).
inline void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& values,
                         std::vector<std::vector<double>>& vectors) {
    std::size_t n = a.size();
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = vectors[k][p], vkq = vectors[k][q];
                    vectors[k][p] = c * vkp - s * vkq;
                    vectors[k][q] = s * vkp + c * vkq;
                }
            }
    }
    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];
}

// Dominant eigenvector (unit norm, sign fixed non-negative) of a symmetric
// positive semi-definite matrix.
inline std::vector<double> dominant_eigenvector(const std::vector<std::vector<double>>& m) {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    jacobi_eigen(m, values, vectors);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    std::vector<double> v(values.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = vectors[i][best];
        norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
    double sign = v[arg] < 0.0 ? -1.0 : 1.0;
    for (double& x : v) x = sign * x / norm;
    return v;
}

// HITS hub/authority via dense eigendecompositions of W W^T and W^T W.
inline void brute_hits(const Dense& g, std::vector<double>& hub, std::vector<double>& auth) {
    std::size_t n = g.n;
    std::vector<std::vector<double>> wwt(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> wtw(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                wwt[i][j] += g.w[i][k] * g.w[j][k];
                wtw[i][j] += g.w[k][i] * g.w[k][j];
            }
    hub = dominant_eigenvector(wwt);
    auth = dominant_eigenvector(wtw);
}

// Betweenness by counting shortest paths through every ordered (s, t) pair
// directly; sigma[s][v] = number of shortest s->v paths.
inline std::vector<double> brute_betweenness(const Dense& g) {
    std::size_t n = g.n;
    std::vector<double> score(n, 0.0);
    if (n < 3) return score;
    auto dist = unit_apsp(g, /*respect_direction=*/true);
    std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        sigma[s][s] = 1.0;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return dist[s][a] < dist[s][b]; });
        for (std::size_t v : order) {
            if (v == s || dist[s][v] >= kUnreachable) continue;
            for (std::size_t u = 0; u < n; ++u)
                if (g.arc(u, v) && dist[s][u] + 1 == dist[s][v]) sigma[s][v] += sigma[s][u];
        }
    }
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t || dist[s][t] >= kUnreachable) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == s || v == t) continue;
                if (dist[s][v] + dist[v][t] == dist[s][t])
                    score[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
            }
        }
    double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (double& x : score) x /= norm;
    return score;
}

// Kendall tau-b by literal enumeration of every pair.
inline double brute_kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t n = a.size();
    double concordant = 0.0, discordant = 0.0, ties_a = 0.0, ties_b = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double da = a[i] - a[j];
            double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) continue;
            if (da == 0.0) {
                ties_a += 1.0;
            } else if (db == 0.0) {
                ties_b += 1.0;
            } else if (da * db > 0.0) {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    double ties_ab = n0 - concordant - discordant - ties_a - ties_b;
    double denom = std::sqrt(n0 - ties_a - ties_ab) * std::sqrt(n0 - ties_b - ties_ab);
    return (concordant - discordant) / denom;
}

// --- quadrature ---------------------------------------------------------

inline double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                               double b, double fb, double m, double fm, double whole,
                               double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_slice(a, fa, m, fm, flm);
    double right = simpson_slice(m, fm, b, fb, frm);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson_slice(a, fa, b, fb, fm);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

// Integral of a density over [x_min, inf) via the substitution x = x_min e^u,
// which converges exponentially for every candidate tail.
inline double integrate_tail(const std::function<double(double)>& pdf, double x_min,
                             double u_max = 80.0) {
    auto g = [&](double u) {
        double x = x_min * std::exp(u);
        return pdf(x) * x;
    };
    return integrate(g, 0.0, u_max, 1e-10);
}

}  // namespace oracle
