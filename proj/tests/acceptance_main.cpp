// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <netstrata/centrality.hpp>
#include <netstrata/cli.hpp>
#include <netstrata/graphstats.hpp>
#include <netstrata/heavytail.hpp>
#include <netstrata/ingest.hpp>
#include <netstrata/netbuild.hpp>
#include <netstrata/network.hpp>
#include <netstrata/registry.hpp>
#include <netstrata/rng.hpp>
#include <netstrata/syngen.hpp>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace netstrata;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ht::DegreeSample sample_of(std::vector<double> values) {
    ht::DegreeSample s;
    s.values = std::move(values);
    s.scale = 1.0;
    return s;
}

ht::FitResult model(ht::CandidateKind kind, std::map<std::string, double> params,
                    double x_min) {
    ht::FitResult f;
    f.kind = kind;
    f.params = std::move(params);
    f.x_min = x_min;
    return f;
}

double sample_min(const ht::DegreeSample& s) {
    return *std::min_element(s.values.begin(), s.values.end());
}

net::Layer arcs(net::LayerName name, bool directed, std::size_t n, std::size_t m) {
    net::Layer layer;
    layer.name = name;
    layer.directed = directed;
    std::size_t added = 0;
    for (net::NodeIndex i = 0; i < n && added < m; ++i)
        for (net::NodeIndex j = directed ? 0 : i + 1; j < n && added < m; ++j) {
            if (i == j) continue;
            layer.add_weight(i, j, 1.0);
            ++added;
        }
    return layer;
}

// --- 1: density identities --------------------------------------------------

void c1_densities(Check& chk) {
    struct Row {
        std::size_t m;
        bool directed;
        long long want;  // density in hundredths
    };
    const std::vector<Row> rows{{525, true, 4},   {901, true, 7},  {2456, true, 19},
                                {900, true, 7},   {3614, false, 56}, {3614, true, 28},
                                {2969, true, 23}};
    for (const auto& row : rows) {
        auto layer = arcs(net::LayerName::st_cred, row.directed, 114, row.m);
        chk.expect(layer.edge_count() == row.m, "layer construction fell short");
        long long got = std::llround(100.0 * stats::density(layer, 114));
        chk.expect(got == row.want, "E=" + std::to_string(row.m) + (row.directed ? " dir" : " und") +
                                        ": rounded density " + std::to_string(got) +
                                        "/100, wanted " + std::to_string(row.want) + "/100");
    }
}

// --- 2: closed-form MLE recovery ---------------------------------------------

void c2_mle_recovery(Check& chk) {
    const std::size_t n = 10000;
    const double root_n = std::sqrt(static_cast<double>(n));

    auto pl = ht::fit_mle(ht::CandidateKind::power_law,
                          sample_of(ht::sample_from(model(ht::CandidateKind::power_law,
                                                          {{"alpha", 2.5}}, 1.0),
                                                    n, 201)),
                          1.0);
    chk.expect(std::fabs(pl.param("alpha") - 2.5) <= 0.05,
               "power law: alpha " + fmt(pl.param("alpha")) + " outside 2.5 +/- 0.05");

    auto ex = ht::fit_mle(ht::CandidateKind::exponential,
                          sample_of(ht::sample_from(model(ht::CandidateKind::exponential,
                                                          {{"lambda", 0.3}}, 1.0),
                                                    n, 202)),
                          1.0);
    chk.expect(std::fabs(ex.param("lambda") - 0.3) <= 3.0 * 0.3 / root_n,
               "exponential: lambda " + fmt(ex.param("lambda")) + " beyond 3 SE of 0.3");

    auto ln = ht::fit_mle(ht::CandidateKind::lognormal,
                          sample_of(ht::sample_from(model(ht::CandidateKind::lognormal,
                                                          {{"mu", 1.0}, {"sigma", 0.5}}, 0.05),
                                                    n, 203)),
                          0.05);
    chk.expect(std::fabs(ln.param("mu") - 1.0) <= 3.0 * 0.5 / root_n,
               "lognormal: mu " + fmt(ln.param("mu")) + " beyond 3 SE of 1.0");
    chk.expect(std::fabs(ln.param("sigma") - 0.5) <= 3.0 * 0.5 / std::sqrt(2.0 * n),
               "lognormal: sigma " + fmt(ln.param("sigma")) + " beyond 3 SE of 0.5");
}

// --- 3: truncated power-law recovery -----------------------------------------

void c3_tpl_recovery(Check& chk) {
    auto gen = model(ht::CandidateKind::truncated_power_law,
                     {{"alpha", 2.0}, {"lambda", 0.05}}, 1.0);
    auto fit = ht::fit_mle(ht::CandidateKind::truncated_power_law,
                           sample_of(ht::sample_from(gen, 10000, 301)), 1.0);
    double a = fit.param("alpha"), l = fit.param("lambda");
    chk.expect(a >= 1.9 && a <= 2.1, "alpha " + fmt(a) + " outside [1.9, 2.1]");
    chk.expect(l >= 0.035 && l <= 0.065, "lambda " + fmt(l) + " outside [0.035, 0.065]");
}

// --- 4: cut-off estimation on a spliced sample -------------------------------

void c4_xmin_splice(Check& chk) {
    // 4,000 exponential noise points kept below 30, 1,000 power-law points
    // above it: the scan should land near the splice, i.e. keep roughly the
    // top fifth of the sample.
    Rng rng(401);
    std::vector<double> values;
    values.reserve(5000);
    while (values.size() < 4000) {
        double x = -std::log(rng.uniform_pos()) / 0.12;
        if (x < 30.0) values.push_back(x);
    }
    auto tail = ht::sample_from(model(ht::CandidateKind::power_law, {{"alpha", 2.5}}, 30.0),
                                1000, 402);
    values.insert(values.end(), tail.begin(), tail.end());

    auto est = ht::estimate_xmin(ht::CandidateKind::power_law, sample_of(values));
    double share = static_cast<double>(est.n_tail) / 5000.0;
    chk.expect(share >= 0.08 && share <= 0.30,
               "tail share " + fmt(share) + " outside [0.08, 0.30] (x_min " +
                   fmt(est.x_min) + ")");
}

// --- 5: model selection ------------------------------------------------------

void c5_selection(Check& chk) {
    auto gen = model(ht::CandidateKind::truncated_power_law,
                     {{"alpha", 2.0}, {"lambda", 0.05}}, 1.0);
    int winners = 0, exp_negative = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto sample = sample_of(ht::sample_from(gen, 10000, 500 + trial));
        std::vector<ht::FitResult> fits;
        for (auto kind : ht::all_kinds()) fits.push_back(ht::fit_mle(kind, sample, 1.0));
        auto sel = ht::selection_score(fits, sample);
        if (sel.winner == ht::CandidateKind::truncated_power_law) ++winners;
        if (sel.winner != ht::CandidateKind::exponential) {
            for (const auto& pair : sel.pairs) {
                if (pair.first != ht::CandidateKind::exponential) continue;
                if (pair.second != sel.winner) continue;
                if (pair.lr.r_statistic < 0.0 && pair.lr.p_value <= 0.05) ++exp_negative;
                break;
            }
        }
    }
    chk.expect(winners >= 18,
               "truncated power law won " + std::to_string(winners) + "/20 (< 18)");
    chk.expect(exp_negative >= 18, "exponential ratio significant against winner in " +
                                       std::to_string(exp_negative) + "/20 (< 18)");
}

// --- 6: bootstrap calibration and power --------------------------------------

void c6_bootstrap(Check& chk) {
    auto tpl = model(ht::CandidateKind::truncated_power_law,
                     {{"alpha", 2.0}, {"lambda", 0.05}}, 1.0);
    int kept = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto sample = sample_of(ht::sample_from(tpl, 1000, 600 + trial));
        ht::BootstrapOptions options;
        options.b_iterations = 200;
        options.tail_only = false;
        options.significance = 0.10;
        options.seed = static_cast<std::uint64_t>(600 + trial);
        auto rep = ht::bootstrap_gof(ht::CandidateKind::truncated_power_law, sample, options);
        if (!rep.reject_h0) ++kept;
    }
    chk.expect(kept >= 16, "own-model data survived in " + std::to_string(kept) + "/20 (< 16)");

    auto ex = model(ht::CandidateKind::exponential, {{"lambda", 0.5}}, 1.0);
    int rejected = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto sample = sample_of(ht::sample_from(ex, 5000, 650 + trial));
        ht::BootstrapOptions options;
        options.b_iterations = 200;
        options.tail_only = false;
        options.significance = 0.10;
        options.seed = static_cast<std::uint64_t>(650 + trial);
        auto rep = ht::bootstrap_gof(ht::CandidateKind::power_law, sample, options);
        if (rep.reject_h0) ++rejected;
    }
    chk.expect(rejected >= 18,
               "power law rejected on exponential data in " + std::to_string(rejected) +
                   "/20 (< 18)");
}

// --- 7: graph statistics vs brute force --------------------------------------

void c7_graphstats(Check& chk) {
    auto close = [](double a, double b) {
        return std::fabs(a - b) <= 1e-10 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    Rng rng(701);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.below(12);
        bool directed = rng.uniform() < 0.5;
        double p = rng.uniform();
        auto layer = testutil::random_layer(rng, n, directed, p);
        auto got = stats::layer_stats(layer, n);
        auto want = oracle::brute_layer_stats(layer, n);
        std::string tag = "trial " + std::to_string(trial) + " (n=" + std::to_string(n) +
                          (directed ? " dir" : " und") + "): ";
        chk.expect(got.n_nodes == want.n_nodes, tag + "n_nodes");
        chk.expect(got.n_edges == want.n_edges, tag + "n_edges");
        chk.expect(got.n_components == want.n_components, tag + "n_components");
        chk.expect(close(got.largest_comp_node_share, want.largest_comp_node_share),
                   tag + "largest_comp_node_share");
        chk.expect(close(got.largest_comp_edge_share, want.largest_comp_edge_share),
                   tag + "largest_comp_edge_share");
        chk.expect(got.diameter_largest_comp == want.diameter_largest_comp, tag + "diameter");
        chk.expect(close(got.avg_clustering, want.avg_clustering), tag + "avg_clustering");
        chk.expect(got.reciprocity.has_value() == want.reciprocity.has_value(),
                   tag + "reciprocity presence");
        if (got.reciprocity && want.reciprocity)
            chk.expect(close(*got.reciprocity, *want.reciprocity), tag + "reciprocity");
        chk.expect(close(got.density, want.density), tag + "density");
        chk.expect(close(got.global_efficiency, want.global_efficiency), tag + "efficiency");
        chk.expect(close(got.herfindahl, want.herfindahl), tag + "herfindahl");
    }
}

// --- 8: centralities vs direct solves ----------------------------------------

void c8_centrality(Check& chk) {
    Rng rng(801);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.below(4);
        bool directed = rng.uniform() < 0.5;
        auto layer = testutil::random_layer(rng, n, directed, 0.6);
        if (layer.edge_count() == 0) layer.add_weight(0, 1, 1.0);
        auto network = testutil::make_network(n, {layer});
        std::string tag = "trial " + std::to_string(trial) + ": ";

        auto pr = cent::pagerank(network, layer.name);
        std::vector<double> got;
        double mass = 0.0;
        for (const auto& id : network.nodes) {
            got.push_back(pr.scores.at(id));
            mass += pr.scores.at(id);
        }
        chk.expect(std::fabs(mass - 1.0) <= 1e-9, tag + "pagerank mass " + fmt(mass));
        auto dense = oracle::Dense::from_layer(layer, n);
        auto want = oracle::brute_pagerank(dense, 0.85);
        for (std::size_t i = 0; i < n; ++i)
            chk.expect(std::fabs(got[i] - want[i]) <= 1e-8,
                       tag + "pagerank node " + std::to_string(i) + ": " + fmt(got[i]) +
                           " vs " + fmt(want[i]));

        auto hr = cent::hits(network, layer.name);
        std::vector<double> hub_want, auth_want;
        oracle::brute_hits(dense, hub_want, auth_want);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& id = network.nodes[i];
            chk.expect(std::fabs(hr.hub.scores.at(id) - hub_want[i]) <= 1e-6,
                       tag + "hub node " + std::to_string(i));
            chk.expect(std::fabs(hr.authority.scores.at(id) - auth_want[i]) <= 1e-6,
                       tag + "authority node " + std::to_string(i));
        }
    }

    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 3 + static_cast<std::size_t>(trial);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(rng.below(4));
            b[i] = static_cast<double>(rng.below(4));
        }
        if (std::count(a.begin(), a.end(), a.front()) == static_cast<long>(n)) a[0] += 1.0;
        if (std::count(b.begin(), b.end(), b.front()) == static_cast<long>(n)) b[0] += 1.0;
        chk.expect(cent::kendall_tau(a, b) == oracle::brute_kendall_tau(a, b),
                   "tau trial " + std::to_string(trial) + " differs from pair enumeration");
    }
}

// --- 9: pipeline integrity ---------------------------------------------------

struct Pipeline {
    syn::SynConfig config;
    syn::SynOutput output;
    registry::GroupMap groups;
    net::MultiLayerNetwork group_net;
    net::MultiLayerNetwork entity_net;
};

Pipeline run_pipeline(const fs::path& bundle_dir) {
    Pipeline p;
    p.config = syn::SynConfig::defaults();
    p.output = syn::generate(p.config);
    syn::write_bundle(p.output, p.config, bundle_dir.string());

    auto open = [&](const char* name) {
        return std::ifstream(bundle_dir / name, std::ios::binary);
    };
    auto entities_in = open("entities.csv");
    auto entities = registry::load_entities_csv(entities_in);
    auto links_in = open("control_links.csv");
    auto links = registry::load_control_links_csv(links_in);
    auto heads_in = open("group_heads.csv");
    auto heads = registry::load_group_heads_csv(heads_in);
    auto balances_in = open("balance_sheet.csv");
    auto balances = registry::load_balance_sheet_csv(balances_in);

    net::BuildInputs inputs;
    {
        ingest::ValidationReport report;
        auto in = open("loans.csv");
        inputs.loans = ingest::load_loans_csv(in, report, true);
    }
    {
        ingest::ValidationReport report;
        auto in = open("holdings.csv");
        inputs.holdings = ingest::load_holdings_csv(in, report, true);
    }
    {
        ingest::ValidationReport report;
        auto in = open("securities.csv");
        inputs.securities = ingest::load_securities_csv(in, report, true);
    }
    {
        ingest::ValidationReport report;
        auto in = open("sft.csv");
        inputs.sfts = ingest::load_sft_csv(in, report, true);
    }

    p.groups = registry::resolve_groups(entities, links, heads);
    auto enriched = registry::enrich_groups(p.groups, balances);

    net::BuildOptions options;
    options.as_of = p.config.as_of;
    options.level = net::Level::group;
    p.group_net = net::build_network(inputs, p.groups, enriched.profiles, options);
    options.level = net::Level::entity;
    p.entity_net = net::build_network(inputs, p.groups, enriched.profiles, options);
    return p;
}

using CentLedger = std::map<std::pair<std::string, std::string>, long long>;

CentLedger head_ledger(const net::MultiLayerNetwork& network, const net::Layer& layer,
                       const registry::GroupMap& groups) {
    CentLedger ledger;
    for (const auto& [key, w] : layer.edges) {
        auto src = groups.head_of(network.nodes[key.first]);
        auto dst = groups.head_of(network.nodes[key.second]);
        std::string a = src.value_or(network.nodes[key.first]);
        std::string b = dst.value_or(network.nodes[key.second]);
        if (!layer.directed && b < a) std::swap(a, b);
        ledger[{a, b}] += std::llround(w * 100.0);
    }
    return ledger;
}

void c9_pipeline(Check& chk, double& report_seconds) {
    fs::path base = fs::temp_directory_path() / "netstrata_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    auto p = run_pipeline(base / "bundle_a");
    syn::write_bundle(syn::generate(p.config), p.config, (base / "bundle_b").string());

    const std::vector<std::string> bundle_files{
        "entities.csv", "control_links.csv", "group_heads.csv",
        "balance_sheet.csv", "loans.csv", "holdings.csv",
        "securities.csv", "sft.csv", "ground_truth.json"};
    auto slurp = [](const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    for (const auto& name : bundle_files)
        chk.expect(slurp(base / "bundle_a" / name) == slurp(base / "bundle_b" / name),
                   "rerun changed " + name);

    // No self-loops anywhere, at either level.
    for (const auto* network : {&p.group_net, &p.entity_net})
        for (const auto& [name, layer] : network->layers)
            for (const auto& [key, w] : layer.edges) {
                chk.expect(key.first != key.second,
                           std::string("self-loop in ") + net::to_string(name));
                chk.expect(w > 0.0, std::string("non-positive weight in ") +
                                        net::to_string(name));
            }

    // Flattened totals conserve the per-layer mass (undirected layers count
    // twice, once per orientation).
    for (const auto* network : {&p.group_net, &p.entity_net}) {
        double expected = 0.0;
        for (const auto& [name, layer] : network->layers) {
            if (name == net::LayerName::flat) continue;
            expected += (layer.directed ? 1.0 : 2.0) * layer.total_weight();
        }
        double flat = network->layer(net::LayerName::flat).total_weight();
        chk.expect(std::fabs(flat - expected) <= 1e-9 * std::max(1.0, expected),
                   "flatten conservation off by " + fmt(flat - expected));
    }

    // Entity-level edges roll up to the group-level ledger cent for cent.
    for (const auto& [name, group_layer] : p.group_net.layers) {
        auto got = head_ledger(p.entity_net, p.entity_net.layer(name), p.groups);
        auto want = head_ledger(p.group_net, group_layer, p.groups);
        chk.expect(got == want,
                   std::string("entity rollup differs on ") + net::to_string(name));
    }
    for (const auto& [name, cents] : p.output.ledger_cents) {
        long long got = std::llround(p.group_net.layer(name).total_weight() * 100.0);
        chk.expect(got == cents, std::string("ledger total differs on ") +
                                     net::to_string(name));
    }

    // The full report must finish inside a minute.
    std::ostringstream out, err;
    auto start = std::chrono::steady_clock::now();
    int rc = cli::run({"report", "--in", (base / "bundle_a").string(), "--out",
                       (base / "report").string()},
                      out, err);
    report_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();
    chk.expect(rc == 0, "report exited " + std::to_string(rc) + ": " + err.str());
    chk.expect(report_seconds < 60.0, "report took " + fmt(report_seconds) + " s");

    fs::remove_all(base);
}

// --- 10: generator calibration band ------------------------------------------

void c10_calibration(Check& chk) {
    // Full-range truncated power-law fits of entity-level in-strengths on the
    // default generator output should land inside the configured band. This
    // checks the generator's calibration, not any empirical claim.
    fs::path base = fs::temp_directory_path() / "netstrata_acceptance_c10";
    fs::remove_all(base);
    fs::create_directories(base);
    auto p = run_pipeline(base / "bundle");
    fs::remove_all(base);

    for (auto name : {net::LayerName::st_cred, net::LayerName::lt_cred,
                      net::LayerName::cross_sec, net::LayerName::st_fund}) {
        auto sample = ht::weighted_degree_sample(p.entity_net, name, ht::Direction::in);
        auto fit = ht::fit_mle(ht::CandidateKind::truncated_power_law, sample,
                               sample_min(sample));
        double a = fit.param("alpha"), l = fit.param("lambda");
        std::string tag = net::to_string(name);
        chk.expect(a >= 1.75 && a <= 2.25,
                   tag + ": alpha " + fmt(a) + " outside [1.75, 2.25]");
        chk.expect(l >= 0.05 && l <= 0.075,
                   tag + ": lambda " + fmt(l) + " outside [0.05, 0.075]");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        double budget_s;
        std::function<void(Check&)> body;
    };
    double report_seconds = 0.0;
    const std::vector<Criterion> criteria{
        {"density identities on the 114-node reference counts", 1.0, c1_densities},
        {"maximum-likelihood parameter recovery", 5.0, c2_mle_recovery},
        {"truncated power-law recovery", 30.0, c3_tpl_recovery},
        {"tail cut-off estimation on a spliced sample", 30.0, c4_xmin_splice},
        {"model selection on truncated power-law data", 300.0, c5_selection},
        {"bootstrap calibration and power", 600.0, c6_bootstrap},
        {"graph statistics against brute-force oracles", 30.0, c7_graphstats},
        {"centralities against direct solves", 30.0, c8_centrality},
        {"generator-to-network pipeline integrity", 120.0,
         [&](Check& chk) { c9_pipeline(chk, report_seconds); }},
        {"generator calibration band for fitted tail parameters", 60.0, c10_calibration},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check chk;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].body(chk);
        } catch (const std::exception& e) {
            chk.expect(false, std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        chk.expect(elapsed < criteria[i].budget_s,
                   "took " + fmt(elapsed) + " s (budget " + fmt(criteria[i].budget_s) + " s)");
        if (!chk.ok) ++failures;
        std::printf("[%s] %2zu/10 %s (%.1f s)%s%s\n", chk.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label, elapsed, chk.ok ? "" : " -- ",
                    chk.ok ? "" : chk.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/10 passed\n", 10 - failures);
    return failures;
}
