#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <netstrata/error.hpp>
#include <netstrata/ingest.hpp>
#include <netstrata/netbuild.hpp>
#include <netstrata/registry.hpp>
#include <netstrata/syngen.hpp>

#include "doctest.h"

using namespace netstrata;
namespace fs = std::filesystem;

namespace {

std::string error_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

syn::SynConfig small_config() {
    auto config = syn::SynConfig::defaults();
    config.n_groups = 8;
    config.entities_min = 2;
    config.entities_max = 4;
    config.n_external = 3;
    config.seed = 5;
    return config;
}

net::MultiLayerNetwork build_from(const syn::SynOutput& output, const syn::SynConfig& config,
                                  net::Level level) {
    auto groups = registry::resolve_groups(output.entities, output.links, output.heads);
    auto enriched = registry::enrich_groups(groups, output.balances);
    net::BuildOptions options;
    options.level = level;
    options.as_of = config.as_of;
    return net::build_network(output.records, groups, enriched.profiles, options);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag)
        : path(fs::temp_directory_path() / (std::string("netstrata_syn_") + tag)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("syngen") {

TEST_CASE("identical configurations write byte-identical bundles") {
    auto config = small_config();
    auto output = syn::generate(config);
    TempDir a("a"), b("b");
    syn::write_bundle(output, config, a.path.string());
    syn::write_bundle(syn::generate(config), config, b.path.string());

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(a.path))
        names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"balance_sheet.csv", "control_links.csv",
                                            "entities.csv", "ground_truth.json",
                                            "group_heads.csv", "holdings.csv", "loans.csv",
                                            "securities.csv", "sft.csv"});
    for (const auto& name : names) CHECK(slurp(a.path / name) == slurp(b.path / name));

    auto other = config;
    other.seed = 6;
    TempDir c("c");
    syn::write_bundle(syn::generate(other), other, c.path.string());
    CHECK(slurp(a.path / "loans.csv") != slurp(c.path / "loans.csv"));
}

TEST_CASE("the bundle passes its own strict loaders") {
    auto config = small_config();
    auto output = syn::generate(config);
    TempDir dir("strict");
    syn::write_bundle(output, config, dir.path.string());

    {
        std::ifstream in(dir.path / "entities.csv");
        CHECK(registry::load_entities_csv(in).size() == output.entities.size());
    }
    {
        std::ifstream in(dir.path / "control_links.csv");
        CHECK(registry::load_control_links_csv(in).size() == output.links.size());
    }
    {
        std::ifstream in(dir.path / "group_heads.csv");
        CHECK(registry::load_group_heads_csv(in) == output.heads);
    }
    {
        std::ifstream in(dir.path / "balance_sheet.csv");
        CHECK(registry::load_balance_sheet_csv(in).size() == output.balances.size());
    }
    {
        ingest::ValidationReport report;
        std::ifstream in(dir.path / "loans.csv");
        CHECK(ingest::load_loans_csv(in, report, /*strict=*/true) == output.records.loans);
        CHECK(report.clean());
    }
    {
        ingest::ValidationReport report;
        std::ifstream in(dir.path / "holdings.csv");
        CHECK(ingest::load_holdings_csv(in, report, true) == output.records.holdings);
        CHECK(report.clean());
    }
    {
        ingest::ValidationReport report;
        std::ifstream in(dir.path / "securities.csv");
        CHECK(ingest::load_securities_csv(in, report, true) == output.records.securities);
        CHECK(report.clean());
    }
    {
        ingest::ValidationReport report;
        std::ifstream in(dir.path / "sft.csv");
        CHECK(ingest::load_sft_csv(in, report, true) == output.records.sfts);
        CHECK(report.clean());
    }
}

TEST_CASE("control links resolve to exactly the intended partition") {
    auto config = small_config();
    auto output = syn::generate(config);
    auto groups = registry::resolve_groups(output.entities, output.links, output.heads);
    CHECK(groups.membership == output.partition);
    CHECK(groups.head_ids == output.heads);
    CHECK(output.heads.size() == config.n_groups);

    // Externals sit in the entity file but never in the partition.
    CHECK(output.external_entities.size() == config.n_external);
    for (const auto& id : output.external_entities) {
        CHECK(output.partition.count(id) == 0);
        bool listed = false;
        for (const auto& e : output.entities) listed = listed || e.id == id;
        CHECK(listed);
    }
}

TEST_CASE("full density realizes the complete graph on two groups") {
    auto config = small_config();
    config.n_groups = 2;
    for (auto& [name, spec] : config.layers) spec.density = 1.0;
    auto output = syn::generate(config);
    CHECK(output.edge_counts.at(net::LayerName::st_cred) == 2);
    CHECK(output.edge_counts.at(net::LayerName::lt_cred) == 2);
    CHECK(output.edge_counts.at(net::LayerName::cross_sec) == 2);
    CHECK(output.edge_counts.at(net::LayerName::st_fund) == 2);
    CHECK(output.edge_counts.at(net::LayerName::ovrl_portfl) == 1);
}

TEST_CASE("the built network matches the generator's ground truth") {
    auto config = small_config();
    auto output = syn::generate(config);
    auto network = build_from(output, config, net::Level::group);

    CHECK(network.nodes.size() == config.n_groups);
    for (const auto& [name, count] : output.edge_counts)
        CHECK(network.layer(name).edges.size() == count);
    for (const auto& [name, cents] : output.ledger_cents)
        CHECK(std::llround(network.layer(name).total_weight() * 100.0) == cents);

    for (const auto& [name, layer] : network.layers)
        for (const auto& [key, w] : layer.edges) {
            CHECK(key.first != key.second);
            CHECK(w > 0.0);
        }

    // Entity-level records roll up to the same group-level totals.
    auto entity_net = build_from(output, config, net::Level::entity);
    for (const auto& [name, cents] : output.ledger_cents)
        CHECK(std::llround(entity_net.layer(name).total_weight() * 100.0) == cents);
}

TEST_CASE("default densities realize the reference edge counts exactly") {
    auto config = syn::SynConfig::defaults();
    auto output = syn::generate(config);
    CHECK(output.edge_counts.at(net::LayerName::st_cred) == 525);
    CHECK(output.edge_counts.at(net::LayerName::lt_cred) == 901);
    CHECK(output.edge_counts.at(net::LayerName::cross_sec) == 2456);
    CHECK(output.edge_counts.at(net::LayerName::st_fund) == 900);
    CHECK(output.edge_counts.at(net::LayerName::ovrl_portfl) == 3614);
    CHECK(output.heads.size() == 114);
}

TEST_CASE("preferential attachment still honors the density targets") {
    auto config = small_config();
    config.attachment = syn::Attachment::preferential;
    auto output = syn::generate(config);
    auto again = syn::generate(config);
    CHECK(output.edge_counts == again.edge_counts);
    CHECK(output.partition == again.partition);
    auto network = build_from(output, config, net::Level::group);
    for (const auto& [name, count] : output.edge_counts)
        CHECK(network.layer(name).edges.size() == count);
}

TEST_CASE("impossible configurations are rejected up front") {
    CHECK(error_code([&] {
              auto c = small_config();
              c.n_groups = 1;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.entities_min = 5;
              c.entities_max = 4;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.scale = 0.0;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers.at(net::LayerName::st_cred).density = 0.0;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers.at(net::LayerName::st_cred).density = 1.5;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers.at(net::LayerName::lt_cred).records_min = 3;
              c.layers.at(net::LayerName::lt_cred).records_max = 2;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers.at(net::LayerName::st_fund).weights.x_min = 0.0;
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers.at(net::LayerName::st_cred).weights.kind =
                  ht::CandidateKind::power_law;
              c.layers.at(net::LayerName::st_cred).weights.params = {{"alpha", 0.9}};
              syn::generate(c);
          }) == "syngen.config");
    CHECK(error_code([&] {
              auto c = small_config();
              c.layers[net::LayerName::flat] = syn::LayerSpec{};
              syn::generate(c);
          }) == "syngen.config");
}

}  // TEST_SUITE
