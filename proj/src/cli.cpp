#include "netstrata/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netstrata/centrality.hpp"
#include "netstrata/error.hpp"
#include "netstrata/graphstats.hpp"
#include "netstrata/heavytail.hpp"
#include "netstrata/ingest.hpp"
#include "netstrata/netbuild.hpp"
#include "netstrata/registry.hpp"
#include "netstrata/syngen.hpp"

namespace netstrata::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// small plumbing

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cli.input", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const fs::path& path, const std::string& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cli.output", "cannot write " + path.string());
    out << body;
    if (!out) fail("cli.output", "short write to " + path.string());
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
    ordered_json detail;
    detail["code"] = code;
    detail["message"] = message;
    ordered_json top;
    top["error"] = detail;
    err << top.dump() << "\n";
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("NETSTRATA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
    }
    return 1;
}

// Sidecar written next to every output file: <file>.meta.json. Records the
// command, canonical flag values, input digests, and per-column units so a
// run is reproducible from the sidecar alone.
struct Manifest {
    std::string command;
    ordered_json arguments = ordered_json::object();
    ordered_json inputs = ordered_json::object();
    std::optional<std::uint64_t> seed;

    explicit Manifest(std::string cmd) : command(std::move(cmd)) {}

    template <class T>
    void flag(const std::string& name, const T& value) {
        arguments[name] = value;
    }

    void input_text(const std::string& name, const std::string& body) {
        inputs[name] = fnv1a_hex(body);
    }

    void write(const fs::path& output_file, const ordered_json& units) const {
        ordered_json m;
        m["command"] = command;
        m["tool_version"] = NETSTRATA_VERSION;
        m["arguments"] = arguments;
        m["config_digest"] = fnv1a_hex(arguments.dump());
        m["inputs"] = inputs;
        if (seed)
            m["seed"] = *seed;
        else
            m["seed"] = nullptr;
        m["units"] = units;
        spill(fs::path(output_file.string() + ".meta.json"), m.dump(2) + "\n");
    }
};

// ---------------------------------------------------------------------------
// shared loading helpers

net::MultiLayerNetwork load_network(const std::string& path, Manifest& manifest) {
    std::string body = slurp(path);
    manifest.input_text(fs::path(path).filename().generic_string(), body);
    std::istringstream in(body);
    return net::from_json_stream(in);
}

net::LayerName need_layer(const std::string& s) {
    auto name = net::parse_layer_name(s);
    if (!name) fail("cli.usage", "unknown layer: " + s);
    return *name;
}

cent::Measure need_measure(const std::string& s) {
    auto m = cent::parse_measure(s);
    if (!m) fail("cli.usage", "unknown measure: " + s);
    return *m;
}

ht::CandidateKind need_kind(const std::string& s) {
    auto k = ht::parse_kind(s);
    if (!k) fail("cli.usage", "unknown candidate kind: " + s);
    return *k;
}

ht::Direction need_direction(const std::string& s) {
    auto d = ht::parse_direction(s);
    if (!d) fail("cli.usage", "unknown direction: " + s);
    return *d;
}

Date need_date(const std::string& s) {
    auto d = Date::parse(s);
    if (!d) fail("cli.usage", "bad date (want YYYY-MM-DD): " + s);
    return *d;
}

struct SampleArgs {
    std::string network_path;
    std::string layer;
    std::string direction = "in";
    double scale = 1e7;
    bool unweighted = false;
};

ht::DegreeSample make_sample(const net::MultiLayerNetwork& network, const SampleArgs& args) {
    if (args.scale <= 0) fail("cli.usage", "--scale must be positive");
    return ht::weighted_degree_sample(network, need_layer(args.layer), need_direction(args.direction),
                                      args.scale, !args.unweighted);
}

double sample_min(const ht::DegreeSample& sample) {
    return *std::min_element(sample.values.begin(), sample.values.end());
}

ordered_json fit_json(const ht::FitResult& fit) {
    ordered_json j;
    j["kind"] = ht::to_string(fit.kind);
    ordered_json params = ordered_json::object();
    for (const auto& [name, value] : fit.params) params[name] = value;
    j["params"] = params;
    j["x_min"] = fit.x_min;
    j["n_tail"] = fit.n_tail;
    j["log_likelihood"] = fit.log_likelihood;
    j["ks_distance"] = fit.ks_distance;
    j["thin_tail"] = fit.thin_tail;
    return j;
}

ordered_json sample_units() {
    ordered_json u;
    u["x_min"] = "model units (scale EUR each)";
    u["params.alpha"] = "dimensionless exponent";
    u["params.lambda"] = "per model unit";
    u["params.mu"] = "log model units";
    u["params.sigma"] = "log model units";
    u["log_likelihood"] = "nats";
    u["ks_distance"] = "dimensionless";
    return u;
}

// Registry + granular CSV bundle, as produced by syngen or hand-assembled.
struct Bundle {
    std::vector<registry::Entity> entities;
    std::vector<registry::ControlLink> links;
    std::set<std::string> heads;
    std::vector<registry::BalanceRecord> balances;
    std::vector<registry::Override> overrides;
    net::BuildInputs records;
    std::map<std::string, ingest::ValidationReport> reports;
};

Bundle load_bundle(const fs::path& dir, bool strict, Manifest& manifest) {
    if (!fs::is_directory(dir)) fail("cli.input", "not a directory: " + dir.string());
    auto text = [&](const char* name, bool required) -> std::optional<std::string> {
        fs::path p = dir / name;
        if (!fs::exists(p)) {
            if (required) fail("cli.input", "missing input file " + p.string());
            return std::nullopt;
        }
        std::string body = slurp(p);
        manifest.input_text(name, body);
        return body;
    };

    Bundle b;
    {
        std::istringstream s(*text("entities.csv", true));
        b.entities = registry::load_entities_csv(s);
    }
    {
        std::istringstream s(*text("control_links.csv", true));
        b.links = registry::load_control_links_csv(s);
    }
    {
        std::istringstream s(*text("group_heads.csv", true));
        b.heads = registry::load_group_heads_csv(s);
    }
    if (auto body = text("balance_sheet.csv", false)) {
        std::istringstream s(*body);
        b.balances = registry::load_balance_sheet_csv(s);
    }
    if (auto body = text("overrides.csv", false)) {
        std::istringstream s(*body);
        b.overrides = registry::load_overrides_csv(s);
    }
    if (auto body = text("loans.csv", false)) {
        std::istringstream s(*body);
        ingest::ValidationReport rep;
        b.records.loans = ingest::load_loans_csv(s, rep, strict);
        b.reports["loans.csv"] = rep;
    }
    if (auto body = text("holdings.csv", false)) {
        std::istringstream s(*body);
        ingest::ValidationReport rep;
        b.records.holdings = ingest::load_holdings_csv(s, rep, strict);
        b.reports["holdings.csv"] = rep;
    }
    if (auto body = text("securities.csv", false)) {
        std::istringstream s(*body);
        ingest::ValidationReport rep;
        b.records.securities = ingest::load_securities_csv(s, rep, strict);
        b.reports["securities.csv"] = rep;
    }
    if (auto body = text("sft.csv", false)) {
        std::istringstream s(*body);
        ingest::ValidationReport rep;
        b.records.sfts = ingest::load_sft_csv(s, rep, strict);
        b.reports["sft.csv"] = rep;
    }
    return b;
}

// Snapshot date fallback: the latest reference date seen in the data.
Date infer_as_of(const net::BuildInputs& records) {
    std::optional<Date> latest;
    auto bump = [&](const Date& d) {
        if (!latest || latest->days() < d.days()) latest = d;
    };
    for (const auto& r : records.loans) bump(r.reference_date);
    for (const auto& r : records.holdings) bump(r.reference_date);
    for (const auto& r : records.sfts) bump(r.reference_date);
    if (!latest) fail("cli.input", "no records to infer --as-of from; pass it explicitly");
    return *latest;
}

ordered_json counts_json(const net::BuildCounts& c) {
    ordered_json j;
    j["unresolved"] = c.unresolved;
    j["intra_group"] = c.intra_group;
    j["no_maturity"] = c.no_maturity;
    j["non_positive_maturity"] = c.non_positive_maturity;
    j["unknown_isin"] = c.unknown_isin;
    j["out_of_sample"] = c.out_of_sample;
    j["inactive"] = c.inactive;
    j["kind_excluded"] = c.kind_excluded;
    j["total"] = c.total();
    return j;
}

ordered_json validation_json(const std::map<std::string, ingest::ValidationReport>& reports) {
    ordered_json v = ordered_json::object();
    for (const auto& [file, rep] : reports) {
        ordered_json r;
        r["dataset"] = rep.dataset;
        r["rows_total"] = rep.rows_total;
        r["rows_parsed"] = rep.rows_parsed;
        ordered_json errs = ordered_json::array();
        for (const auto& e : rep.errors) {
            ordered_json ej;
            ej["line"] = e.line;
            ej["message"] = e.message;
            errs.push_back(ej);
        }
        r["errors"] = errs;
        r["warnings"] = rep.warnings;
        v[file] = r;
    }
    return v;
}

// Build options shared by `build` and `report`.
struct BuildArgs {
    std::string level = "group";
    int cutoff_months = 3;
    std::string as_of;  // empty = infer from the data
    double threshold = 0.5;
    bool long_term_unspecified = false;
    bool reject_unresolved = false;
    bool strict = false;
    std::string sft_kinds = "repo,buy_sellback";
};

void add_build_flags(CLI::App* sub, BuildArgs& a, bool with_level) {
    if (with_level)
        sub->add_option("--level", a.level, "node granularity: group|entity (default group)");
    sub->add_option("--cutoff-months", a.cutoff_months,
                    "short/long-term maturity cutoff in months (default 3)");
    sub->add_option("--as-of", a.as_of,
                    "snapshot date YYYY-MM-DD (default: latest reference date in the data)");
    sub->add_option("--threshold", a.threshold, "control equity-share threshold (default 0.5)");
    sub->add_flag("--long-term-unspecified", a.long_term_unspecified,
                  "treat loans without maturity as long-term instead of dropping them");
    sub->add_flag("--reject-unresolved", a.reject_unresolved,
                  "fail on counterparties outside the registry instead of dropping them");
    sub->add_flag("--strict", a.strict, "fail on the first malformed CSV row");
    sub->add_option("--sft-kinds", a.sft_kinds,
                    "comma-separated SFT kinds for the funding layer (default repo,buy_sellback)");
}

std::set<ingest::SftKind> parse_sft_kinds(const std::string& csv_list) {
    std::set<ingest::SftKind> kinds;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto k = ingest::parse_sft_kind(item);
        if (!k) fail("cli.usage", "unknown SFT kind: " + item);
        kinds.insert(*k);
    }
    if (kinds.empty()) fail("cli.usage", "--sft-kinds selects nothing");
    return kinds;
}

net::BuildOptions make_build_options(const BuildArgs& a, net::Level level, Date as_of) {
    if (a.cutoff_months < 1) fail("cli.usage", "--cutoff-months must be >= 1");
    net::BuildOptions options;
    options.level = level;
    options.cutoff.months = a.cutoff_months;
    options.unspecified_maturity_is_long_term = a.long_term_unspecified;
    options.reject_unresolved = a.reject_unresolved;
    options.sft_kinds = parse_sft_kinds(a.sft_kinds);
    options.as_of = as_of;
    return options;
}

void record_build_flags(Manifest& m, const BuildArgs& a, const std::string& level, Date as_of) {
    m.flag("level", level);
    m.flag("cutoff_months", a.cutoff_months);
    m.flag("as_of", as_of.str());
    m.flag("threshold", a.threshold);
    m.flag("long_term_unspecified", a.long_term_unspecified);
    m.flag("reject_unresolved", a.reject_unresolved);
    m.flag("strict", a.strict);
    m.flag("sft_kinds", a.sft_kinds);
}

std::string network_json(const net::MultiLayerNetwork& network) {
    std::ostringstream body;
    net::to_json_stream(network, body);
    return body.str();
}

ordered_json network_units() {
    ordered_json u;
    u["layers.*.edges.weight"] = "EUR";
    u["profiles.*.tier1_capital"] = "EUR";
    u["profiles.*.total_assets"] = "EUR";
    return u;
}

ordered_json stats_units() {
    ordered_json u;
    u["n_nodes"] = "count";
    u["n_edges"] = "count";
    u["n_components"] = "count (weak components)";
    u["largest_comp_node_share"] = "fraction of nodes";
    u["largest_comp_edge_share"] = "fraction of edges";
    u["diameter_largest_comp"] = "hops";
    u["avg_clustering"] = "dimensionless";
    u["reciprocity"] = "dimensionless (empty for undirected layers)";
    u["density"] = "dimensionless";
    u["global_efficiency"] = "dimensionless";
    u["herfindahl"] = "dimensionless (on edge weights)";
    return u;
}

ordered_json profile_units() {
    ordered_json u;
    u["k"] = "count (degree)";
    u["cc"] = "dimensionless (clustering)";
    u["total_assets"] = "EUR (empty when unreported)";
    return u;
}

// ---------------------------------------------------------------------------
// centrality helpers

cent::CentralityVector compute_measure(const net::MultiLayerNetwork& network, net::LayerName name,
                                       cent::Measure measure, double damping) {
    if (measure == cent::Measure::pagerank) return cent::pagerank(network, name, damping);
    return cent::compute(network, name, measure);
}

std::string centrality_csv(const net::MultiLayerNetwork& network,
                           const std::optional<net::LayerName>& only_layer,
                           const std::optional<cent::Measure>& only_measure, double damping) {
    std::ostringstream out;
    out << "layer,measure,node_id,score\n";
    for (const auto& [name, layer] : network.layers) {
        (void)layer;
        if (only_layer && *only_layer != name) continue;
        for (auto measure : cent::all_measures()) {
            if (only_measure && *only_measure != measure) continue;
            auto cv = compute_measure(network, name, measure, damping);
            for (const auto& [node, score] : cv.scores)
                out << net::to_string(name) << ',' << cent::to_string(measure) << ',' << node
                    << ',' << num(score) << '\n';
        }
    }
    return out.str();
}

std::string topk_csv(const std::vector<cent::TopEntry>& entries) {
    std::ostringstream out;
    out << "rank,node_id,score,tied,total_assets\n";
    char buf[64];
    for (const auto& e : entries) {
        out << e.rank << ',' << e.node_id << ',' << num(e.score) << ',' << (e.tied ? 1 : 0) << ',';
        if (e.total_assets) {
            std::snprintf(buf, sizeof buf, "%.2f", *e.total_assets);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// syngen

int cmd_syngen(const std::string& out_dir, const std::string& config_path,
               const std::map<std::string, std::string>& flag_overrides) {
    syn::SynConfig config = syn::SynConfig::defaults();
    Manifest manifest("syngen");

    if (!config_path.empty()) {
        std::string body = slurp(config_path);
        manifest.input_text(fs::path(config_path).filename().generic_string(), body);
        ordered_json j;
        try {
            j = ordered_json::parse(body);
        } catch (const ordered_json::parse_error& e) {
            fail("cli.config", std::string("bad JSON in --config: ") + e.what());
        }
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("n_groups")) config.n_groups = j["n_groups"].get<std::size_t>();
        if (j.contains("n_external")) config.n_external = j["n_external"].get<std::size_t>();
        if (j.contains("entities_min")) config.entities_min = j["entities_min"].get<std::size_t>();
        if (j.contains("entities_max")) config.entities_max = j["entities_max"].get<std::size_t>();
        if (j.contains("scale")) config.scale = j["scale"].get<double>();
        if (j.contains("as_of")) config.as_of = need_date(j["as_of"].get<std::string>());
        if (j.contains("attachment")) {
            std::string a = j["attachment"].get<std::string>();
            if (a == "uniform")
                config.attachment = syn::Attachment::uniform;
            else if (a == "preferential")
                config.attachment = syn::Attachment::preferential;
            else
                fail("cli.config", "unknown attachment: " + a);
        }
        if (j.contains("layers")) {
            for (const auto& [key, spec] : j["layers"].items()) {
                auto it = config.layers.find(need_layer(key));
                if (it == config.layers.end()) fail("cli.config", "not a market layer: " + key);
                syn::LayerSpec& ls = it->second;
                if (spec.contains("density")) ls.density = spec["density"].get<double>();
                if (spec.contains("records_min"))
                    ls.records_min = spec["records_min"].get<std::size_t>();
                if (spec.contains("records_max"))
                    ls.records_max = spec["records_max"].get<std::size_t>();
                if (spec.contains("weights")) {
                    const auto& w = spec["weights"];
                    if (w.contains("kind"))
                        ls.weights.kind = need_kind(w["kind"].get<std::string>());
                    if (w.contains("params")) {
                        ls.weights.params.clear();
                        for (const auto& [pname, pval] : w["params"].items())
                            ls.weights.params[pname] = pval.get<double>();
                    }
                    if (w.contains("x_min")) ls.weights.x_min = w["x_min"].get<double>();
                }
            }
        }
    }

    // Command-line flags win over the config file.
    auto over = [&](const char* name) -> std::optional<std::string> {
        auto it = flag_overrides.find(name);
        if (it == flag_overrides.end()) return std::nullopt;
        return it->second;
    };
    if (auto v = over("seed")) config.seed = std::stoull(*v);
    if (auto v = over("groups")) config.n_groups = std::stoull(*v);
    if (auto v = over("externals")) config.n_external = std::stoull(*v);
    if (auto v = over("entities-min")) config.entities_min = std::stoull(*v);
    if (auto v = over("entities-max")) config.entities_max = std::stoull(*v);
    if (auto v = over("scale")) config.scale = std::stod(*v);
    if (auto v = over("as-of")) config.as_of = need_date(*v);
    if (auto v = over("attachment")) {
        if (*v == "uniform")
            config.attachment = syn::Attachment::uniform;
        else if (*v == "preferential")
            config.attachment = syn::Attachment::preferential;
        else
            fail("cli.usage", "unknown attachment: " + *v);
    }

    auto output = syn::generate(config);
    syn::write_bundle(output, config, out_dir);

    manifest.seed = config.seed;
    manifest.flag("seed", config.seed);
    manifest.flag("n_groups", config.n_groups);
    manifest.flag("n_external", config.n_external);
    manifest.flag("entities_min", config.entities_min);
    manifest.flag("entities_max", config.entities_max);
    manifest.flag("scale", config.scale);
    manifest.flag("as_of", config.as_of.str());
    manifest.flag("attachment",
                  config.attachment == syn::Attachment::uniform ? "uniform" : "preferential");
    ordered_json units;
    units["balance_sheet.csv:tier1_capital"] = "EUR";
    units["balance_sheet.csv:total_assets"] = "EUR";
    units["control_links.csv:equity_share"] = "fraction";
    units["loans.csv:outstanding_nominal"] = "EUR";
    units["holdings.csv:market_value"] = "EUR";
    units["sft.csv:open_amount"] = "EUR";
    // One bundle-level sidecar: the nine files share a single provenance.
    manifest.write(fs::path(out_dir) / "syngen", units);
    return 0;
}

// ---------------------------------------------------------------------------
// build

int cmd_build(const std::string& in_dir, const std::string& out_file, const BuildArgs& args) {
    auto level = net::parse_level(args.level);
    if (!level) fail("cli.usage", "unknown level: " + args.level);

    Manifest manifest("build");
    Bundle bundle = load_bundle(in_dir, args.strict, manifest);
    auto groups = registry::resolve_groups(bundle.entities, bundle.links, bundle.heads,
                                           args.threshold, bundle.overrides);
    auto enriched = registry::enrich_groups(groups, bundle.balances);

    Date as_of = args.as_of.empty() ? infer_as_of(bundle.records) : need_date(args.as_of);
    auto options = make_build_options(args, *level, as_of);
    net::BuildReport report;
    auto network = net::build_network(bundle.records, groups, enriched.profiles, options, &report);

    record_build_flags(manifest, args, args.level, as_of);
    spill(out_file, network_json(network));
    manifest.write(out_file, network_units());

    ordered_json rj;
    rj["level"] = net::to_string(*level);
    rj["as_of"] = as_of.str();
    rj["as_of_inferred"] = args.as_of.empty();
    rj["nodes"] = network.nodes.size();
    ordered_json counts = ordered_json::object();
    for (const auto& [name, c] : report.counts) counts[net::to_string(name)] = counts_json(c);
    rj["dropped"] = counts;
    rj["validation"] = validation_json(bundle.reports);
    rj["ignored_non_head_balance_rows"] = enriched.ignored_non_head_records;
    fs::path report_path(out_file + ".report.json");
    spill(report_path, rj.dump(2) + "\n");
    manifest.write(report_path, ordered_json::object());
    return 0;
}

// ---------------------------------------------------------------------------
// stats / profile

int cmd_stats(const std::string& network_path, const std::string& out_file) {
    Manifest manifest("stats");
    auto network = load_network(network_path, manifest);
    std::ostringstream body;
    stats::write_stats_csv(body, stats::stats_suite(network));
    spill(out_file, body.str());
    manifest.write(out_file, stats_units());
    return 0;
}

int cmd_profile(const std::string& network_path, const std::string& layer,
                const std::string& out_file) {
    Manifest manifest("profile");
    auto network = load_network(network_path, manifest);
    auto profiles = stats::degree_clustering_profile(network, need_layer(layer));
    std::ostringstream body;
    stats::write_profile_csv(body, profiles);
    manifest.flag("layer", layer);
    spill(out_file, body.str());
    manifest.write(out_file, profile_units());
    return 0;
}

// ---------------------------------------------------------------------------
// fit / compare / bootstrap

void record_sample_flags(Manifest& m, const SampleArgs& a) {
    m.flag("layer", a.layer);
    m.flag("direction", a.direction);
    m.flag("scale", a.scale);
    m.flag("weighted", !a.unweighted);
}

ordered_json sample_header(const ht::DegreeSample& sample) {
    ordered_json j;
    j["layer"] = sample.layer;
    j["level"] = net::to_string(sample.level);
    j["direction"] = ht::to_string(sample.direction);
    j["scale"] = sample.scale;
    j["n"] = sample.values.size();
    return j;
}

int cmd_fit(const SampleArgs& sargs, const std::string& kind, bool tail_only, double fixed_xmin,
            const std::string& out_file) {
    Manifest manifest("fit");
    auto network = load_network(sargs.network_path, manifest);
    auto sample = make_sample(network, sargs);
    auto k = need_kind(kind);

    std::string mode;
    ht::FitResult fit;
    if (fixed_xmin > 0) {
        mode = "fixed";
        fit = ht::fit_mle(k, sample, fixed_xmin);
    } else if (tail_only) {
        mode = "tail";
        fit = ht::estimate_xmin(k, sample);
    } else {
        mode = "full";
        fit = ht::fit_mle(k, sample, sample_min(sample));
    }

    record_sample_flags(manifest, sargs);
    manifest.flag("kind", kind);
    manifest.flag("mode", mode);
    if (fixed_xmin > 0) manifest.flag("x_min", fixed_xmin);

    ordered_json j = sample_header(sample);
    j["mode"] = mode;
    j["fit"] = fit_json(fit);
    spill(out_file, j.dump(2) + "\n");
    manifest.write(out_file, sample_units());
    return 0;
}

// Fits every candidate for the model-comparison commands. Full-range mode
// pins each fit at the empirical minimum; tail mode gives each candidate its
// own estimated cut-off (ratio tests renormalize on common tails).
std::vector<ht::FitResult> fit_all(const ht::DegreeSample& sample, bool tail_only) {
    std::vector<ht::FitResult> fits;
    double minv = sample_min(sample);
    for (auto kind : ht::all_kinds())
        fits.push_back(tail_only ? ht::estimate_xmin(kind, sample)
                                 : ht::fit_mle(kind, sample, minv));
    return fits;
}

ordered_json selection_json(const std::vector<ht::FitResult>& fits,
                            const ht::SelectionResult& sel) {
    ordered_json j;
    ordered_json fits_j = ordered_json::array();
    for (const auto& f : fits) fits_j.push_back(fit_json(f));
    j["fits"] = fits_j;
    ordered_json scores = ordered_json::object();
    for (const auto& [kind, score] : sel.scores) scores[ht::to_string(kind)] = score;
    j["scores"] = scores;
    j["winner"] = ht::to_string(sel.winner);
    j["tie"] = sel.tie;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : sel.pairs) {
        ordered_json pj;
        pj["first"] = ht::to_string(p.first);
        pj["second"] = ht::to_string(p.second);
        pj["r_statistic"] = p.lr.r_statistic;
        pj["p_value"] = p.lr.p_value;
        pj["n"] = p.lr.n;
        pairs.push_back(pj);
    }
    j["pairs"] = pairs;
    return j;
}

int cmd_compare(const SampleArgs& sargs, bool tail_only, const std::string& out_file) {
    Manifest manifest("compare");
    auto network = load_network(sargs.network_path, manifest);
    auto sample = make_sample(network, sargs);
    auto fits = fit_all(sample, tail_only);
    auto sel = ht::selection_score(fits, sample);

    record_sample_flags(manifest, sargs);
    manifest.flag("mode", tail_only ? "tail" : "full");

    ordered_json j = sample_header(sample);
    j["mode"] = tail_only ? "tail" : "full";
    auto sj = selection_json(fits, sel);
    for (auto& [key, value] : sj.items()) j[key] = value;
    spill(out_file, j.dump(2) + "\n");
    manifest.write(out_file, sample_units());
    return 0;
}

int cmd_bootstrap(const SampleArgs& sargs, const std::string& kind, bool tail_only,
                  std::size_t b_iterations, double significance, std::uint64_t seed, int threads,
                  const std::string& out_file) {
    Manifest manifest("bootstrap");
    auto network = load_network(sargs.network_path, manifest);
    auto sample = make_sample(network, sargs);

    ht::BootstrapOptions options;
    options.b_iterations = b_iterations;
    options.tail_only = tail_only;
    options.significance = significance;
    options.seed = seed;
    options.threads = resolve_threads(threads);
    auto report = ht::bootstrap_gof(need_kind(kind), sample, options);

    record_sample_flags(manifest, sargs);
    manifest.flag("kind", kind);
    manifest.flag("mode", tail_only ? "tail" : "full");
    manifest.flag("bootstrap_B", b_iterations);
    manifest.flag("significance", significance);
    manifest.flag("threads", options.threads);
    manifest.seed = seed;

    ordered_json j = sample_header(sample);
    j["kind"] = kind;
    j["mode"] = tail_only ? "tail" : "full";
    j["b_requested"] = report.b_requested;
    j["b_effective"] = report.b_effective;
    j["seed"] = report.seed;
    j["significance"] = report.significance;
    j["empirical_fit"] = fit_json(report.empirical_fit);
    j["empirical_ks"] = report.empirical_ks;
    j["p_value"] = report.p_value;
    j["reject_h0"] = report.reject_h0;
    j["thin_tail"] = report.thin_tail;
    j["bootstrap_ks"] = report.bootstrap_ks;
    j["bootstrap_xmin"] = report.bootstrap_xmin;
    ordered_json bp = ordered_json::array();
    for (const auto& params : report.bootstrap_params) {
        ordered_json pj = ordered_json::object();
        for (const auto& [name, value] : params) pj[name] = value;
        bp.push_back(pj);
    }
    j["bootstrap_params"] = bp;
    spill(out_file, j.dump(2) + "\n");
    manifest.write(out_file, sample_units());
    return 0;
}

// ---------------------------------------------------------------------------
// centrality / correlation / topk

int cmd_centrality(const std::string& network_path, const std::string& out_file,
                   const std::string& layer, const std::string& measure, double damping) {
    Manifest manifest("centrality");
    auto network = load_network(network_path, manifest);
    std::optional<net::LayerName> only_layer;
    if (!layer.empty()) only_layer = need_layer(layer);
    std::optional<cent::Measure> only_measure;
    if (!measure.empty()) only_measure = need_measure(measure);

    manifest.flag("layer", layer.empty() ? "all" : layer);
    manifest.flag("measure", measure.empty() ? "all" : measure);
    manifest.flag("damping", damping);
    spill(out_file, centrality_csv(network, only_layer, only_measure, damping));
    ordered_json units;
    units["score"] = "measure-specific: strengths in EUR, pagerank/hub/authority normalized, "
                     "betweenness in path counts";
    manifest.write(out_file, units);
    return 0;
}

int cmd_correlation(const std::string& network_path, const std::string& out_file,
                    const std::string& measure) {
    Manifest manifest("correlation");
    auto network = load_network(network_path, manifest);
    std::vector<cent::Measure> measures;
    if (measure.empty())
        measures = cent::all_measures();
    else
        measures.push_back(need_measure(measure));

    std::ostringstream out;
    out << "measure,layer_a,layer_b,tau\n";
    for (auto m : measures) {
        auto matrix = cent::cross_layer_matrix(network, m);
        for (std::size_t i = 0; i < matrix.layers.size(); ++i)
            for (std::size_t j = 0; j < matrix.layers.size(); ++j)
                out << cent::to_string(m) << ',' << matrix.layers[i] << ',' << matrix.layers[j]
                    << ',' << num(matrix.tau[i][j]) << '\n';
    }
    manifest.flag("measure", measure.empty() ? "all" : measure);
    spill(out_file, out.str());
    ordered_json units;
    units["tau"] = "Kendall tau-b, dimensionless in [-1, 1]";
    manifest.write(out_file, units);
    return 0;
}

int cmd_topk(const std::string& network_path, const std::string& layer, const std::string& measure,
             std::size_t k, double damping, const std::string& out_file) {
    Manifest manifest("topk");
    auto network = load_network(network_path, manifest);
    auto cv = compute_measure(network, need_layer(layer), need_measure(measure), damping);
    auto entries = cent::top_k(cv, k, network.profiles);

    manifest.flag("layer", layer);
    manifest.flag("measure", measure);
    manifest.flag("k", k);
    manifest.flag("damping", damping);
    spill(out_file, topk_csv(entries));
    ordered_json units;
    units["score"] = "measure-specific: strengths in EUR, pagerank/hub/authority normalized, "
                     "betweenness in path counts";
    units["total_assets"] = "EUR (empty when unreported)";
    manifest.write(out_file, units);
    return 0;
}

// ---------------------------------------------------------------------------
// report: the full pipeline in one pass

struct ReportArgs {
    std::string in_dir;
    std::string out_dir;
    BuildArgs build;
    std::string direction = "in";
    double scale = 1e7;
    double damping = 0.85;
    std::size_t bootstrap_b = 200;
    double significance = 0.10;
    std::uint64_t seed = 1;
    int threads = 0;
    bool tail_only = false;
    std::size_t top_k = 10;
};

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::vector<double> xs;
    xs.reserve(points);
    if (lo <= 0 || hi <= lo) {
        xs.push_back(lo);
        return xs;
    }
    double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        xs.push_back(lo * std::exp(static_cast<double>(i) * step));
    return xs;
}

int cmd_report(const ReportArgs& args) {
    Manifest base("report");
    Bundle bundle = load_bundle(args.in_dir, args.build.strict, base);
    auto groups = registry::resolve_groups(bundle.entities, bundle.links, bundle.heads,
                                           args.build.threshold, bundle.overrides);
    auto enriched = registry::enrich_groups(groups, bundle.balances);
    Date as_of =
        args.build.as_of.empty() ? infer_as_of(bundle.records) : need_date(args.build.as_of);

    int threads = resolve_threads(args.threads);
    auto direction = need_direction(args.direction);
    if (args.scale <= 0) fail("cli.usage", "--scale must be positive");

    record_build_flags(base, args.build, "group+entity", as_of);
    base.flag("direction", args.direction);
    base.flag("scale", args.scale);
    base.flag("damping", args.damping);
    base.flag("bootstrap_B", args.bootstrap_b);
    base.flag("significance", args.significance);
    base.flag("seed", args.seed);
    base.flag("threads", threads);
    base.flag("mode", args.tail_only ? "tail" : "full");
    base.flag("top_k", args.top_k);
    base.seed = args.seed;

    fs::path out(args.out_dir);
    fs::create_directories(out);

    auto put = [&](const std::string& name, const std::string& body, const ordered_json& units) {
        spill(out / name, body);
        base.write(out / name, units);
    };

    // Networks at both granularities; heavy-tail analysis reads the entity
    // level, everything topological reads the group level.
    std::map<net::Level, net::MultiLayerNetwork> networks;
    for (auto level : {net::Level::group, net::Level::entity}) {
        auto options = make_build_options(args.build, level, as_of);
        net::BuildReport report;
        networks[level] =
            net::build_network(bundle.records, groups, enriched.profiles, options, &report);
        std::string tag = level == net::Level::group ? "group" : "entity";
        put("network_" + tag + ".json", network_json(networks[level]), network_units());
        ordered_json rj;
        rj["level"] = tag;
        rj["as_of"] = as_of.str();
        rj["nodes"] = networks[level].nodes.size();
        ordered_json counts = ordered_json::object();
        for (const auto& [name, c] : report.counts) counts[net::to_string(name)] = counts_json(c);
        rj["dropped"] = counts;
        rj["validation"] = validation_json(bundle.reports);
        rj["ignored_non_head_balance_rows"] = enriched.ignored_non_head_records;
        put("network_" + tag + ".report.json", rj.dump(2) + "\n", ordered_json::object());
    }
    const auto& nw_group = networks[net::Level::group];
    const auto& nw_entity = networks[net::Level::entity];

    // Table 1: the layer statistics suite.
    {
        std::ostringstream body;
        stats::write_stats_csv(body, stats::stats_suite(nw_group));
        put("table1_stats.csv", body.str(), stats_units());
    }

    // Figure 1: degree vs clustering per layer.
    for (const auto& [name, layer] : nw_group.layers) {
        (void)layer;
        std::ostringstream body;
        stats::write_profile_csv(body, stats::degree_clustering_profile(nw_group, name));
        put(std::string("figure1_profile_") + net::to_string(name) + ".csv", body.str(),
            profile_units());
    }

    // Figure 2 + Table 3 + bootstrap: weighted-degree distributions at the
    // entity level.
    std::ostringstream table3;
    table3 << "layer,kind,alpha,lambda,mu,sigma,x_min,n_tail,log_likelihood,ks_distance,"
              "thin_tail,score,winner\n";
    std::ostringstream boot_summary;
    boot_summary << "layer,kind,n,n_tail,x_min,empirical_ks,p_value,reject_h0,b_requested,"
                    "b_effective,thin_tail\n";
    ordered_json fit_unit = sample_units();
    for (const auto& [name, layer] : nw_entity.layers) {
        (void)layer;
        std::string lname = net::to_string(name);
        auto sample =
            ht::weighted_degree_sample(nw_entity, name, direction, args.scale, true);
        if (sample.values.empty()) continue;

        {
            std::ostringstream body;
            body << "x,density,count\n";
            for (const auto& bin : ht::log_binned_pdf(sample, 10))
                body << num(bin.center) << ',' << num(bin.density) << ',' << bin.count << '\n';
            ordered_json units;
            units["x"] = "model units (scale EUR each), geometric bin centers";
            units["density"] = "probability density per model unit";
            units["count"] = "observations in bin";
            put("figure2_pdf_" + lname + ".csv", body.str(), units);
        }

        auto fits = fit_all(sample, args.tail_only);
        auto sel = ht::selection_score(fits, sample);

        {
            double lo = sample_min(sample);
            double hi = *std::max_element(sample.values.begin(), sample.values.end());
            std::ostringstream body;
            body << "x";
            for (const auto& f : fits) body << ',' << ht::to_string(f.kind);
            body << '\n';
            for (double x : log_grid(lo, hi, 200)) {
                body << num(x);
                for (const auto& f : fits) {
                    body << ',';
                    if (x >= f.x_min) body << num(std::exp(ht::log_density(f, x)));
                }
                body << '\n';
            }
            ordered_json units;
            units["x"] = "model units (scale EUR each), log-spaced";
            units["*"] = "fitted conditional density per model unit (empty below the fit's x_min)";
            put("figure2_fit_" + lname + ".csv", body.str(), units);
        }

        for (const auto& f : fits) {
            auto p = [&](const char* key) {
                auto it = f.params.find(key);
                return it == f.params.end() ? std::string() : num(it->second);
            };
            table3 << lname << ',' << ht::to_string(f.kind) << ',' << p("alpha") << ','
                   << p("lambda") << ',' << p("mu") << ',' << p("sigma") << ',' << num(f.x_min)
                   << ',' << f.n_tail << ',' << num(f.log_likelihood) << ',' << num(f.ks_distance)
                   << ',' << (f.thin_tail ? 1 : 0) << ',' << num(sel.scores.at(f.kind)) << ','
                   << (f.kind == sel.winner ? 1 : 0) << '\n';
        }

        // Goodness-of-fit for the selected candidate.
        ht::BootstrapOptions options;
        options.b_iterations = args.bootstrap_b;
        options.tail_only = args.tail_only;
        options.significance = args.significance;
        options.seed = args.seed;
        options.threads = threads;
        auto gof = ht::bootstrap_gof(sel.winner, sample, options);
        {
            std::ostringstream body;
            body << "iteration,ks\n";
            for (std::size_t i = 0; i < gof.bootstrap_ks.size(); ++i)
                body << i + 1 << ',' << num(gof.bootstrap_ks[i]) << '\n';
            ordered_json units;
            units["ks"] = "KS distance, dimensionless";
            put("bootstrap_" + lname + ".csv", body.str(), units);
        }
        boot_summary << lname << ',' << ht::to_string(sel.winner) << ',' << sample.values.size()
                     << ',' << gof.empirical_fit.n_tail << ',' << num(gof.empirical_fit.x_min)
                     << ',' << num(gof.empirical_ks) << ',' << num(gof.p_value) << ','
                     << (gof.reject_h0 ? 1 : 0) << ',' << gof.b_requested << ','
                     << gof.b_effective << ',' << (gof.thin_tail ? 1 : 0) << '\n';
    }
    {
        ordered_json units;
        units["alpha"] = "dimensionless exponent";
        units["lambda"] = "per model unit";
        units["mu"] = "log model units";
        units["sigma"] = "log model units";
        units["x_min"] = "model units (scale EUR each)";
        units["log_likelihood"] = "nats";
        units["ks_distance"] = "dimensionless";
        units["score"] = "sum of significant log-likelihood ratios, nats";
        put("table3_compare.csv", table3.str(), units);
    }
    {
        ordered_json units;
        units["empirical_ks"] = "KS distance, dimensionless";
        units["p_value"] = "bootstrap tail probability";
        units["x_min"] = "model units (scale EUR each)";
        put("bootstrap_summary.csv", boot_summary.str(), units);
    }

    // Figure 3: cross-layer rank correlation per measure, group level.
    for (auto measure : cent::all_measures()) {
        auto matrix = cent::cross_layer_matrix(nw_group, measure);
        std::ostringstream body;
        body << "layer";
        for (const auto& l : matrix.layers) body << ',' << l;
        body << '\n';
        for (std::size_t i = 0; i < matrix.layers.size(); ++i) {
            body << matrix.layers[i];
            for (std::size_t j = 0; j < matrix.layers.size(); ++j)
                body << ',' << num(matrix.tau[i][j]);
            body << '\n';
        }
        ordered_json units;
        units["*"] = "Kendall tau-b, dimensionless in [-1, 1]";
        put(std::string("figure3_tau_") + cent::to_string(measure) + ".csv", body.str(), units);
    }

    // Figure 4: top-k rankings per layer and measure, group level.
    {
        std::ostringstream body;
        body << "layer,measure,rank,node_id,score,tied,total_assets\n";
        char buf[64];
        for (const auto& [name, layer] : nw_group.layers) {
            (void)layer;
            for (auto measure : cent::all_measures()) {
                auto cv = compute_measure(nw_group, name, measure, args.damping);
                for (const auto& e : cent::top_k(cv, args.top_k, nw_group.profiles)) {
                    body << net::to_string(name) << ',' << cent::to_string(measure) << ','
                         << e.rank << ',' << e.node_id << ',' << num(e.score) << ','
                         << (e.tied ? 1 : 0) << ',';
                    if (e.total_assets) {
                        std::snprintf(buf, sizeof buf, "%.2f", *e.total_assets);
                        body << buf;
                    }
                    body << '\n';
                }
            }
        }
        ordered_json units;
        units["score"] = "measure-specific: strengths in EUR, pagerank/hub/authority normalized, "
                         "betweenness in path counts";
        units["total_assets"] = "EUR (empty when unreported)";
        put("figure4_rankings.csv", body.str(), units);
    }
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"netstrata: multi-layer interbank network construction and analysis"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.set_version_flag("--version", NETSTRATA_VERSION);

    // syngen
    auto* sc_syngen = app.add_subcommand("syngen", "generate a synthetic CSV bundle");
    std::string syn_out, syn_config;
    std::string syn_seed, syn_groups, syn_externals, syn_emin, syn_emax, syn_scale, syn_asof,
        syn_attach;
    sc_syngen->add_option("--out", syn_out, "output directory")->required();
    sc_syngen->add_option("--config", syn_config, "JSON overlay for the generator config");
    sc_syngen->add_option("--seed", syn_seed, "generator seed (default 1)");
    sc_syngen->add_option("--groups", syn_groups, "number of banking groups (default 114)");
    sc_syngen->add_option("--externals", syn_externals, "registry-noise entities (default 6)");
    sc_syngen->add_option("--entities-min", syn_emin, "min entities per group (default 40)");
    sc_syngen->add_option("--entities-max", syn_emax, "max entities per group (default 56)");
    sc_syngen->add_option("--scale", syn_scale, "EUR per model weight unit (default 1e7)");
    sc_syngen->add_option("--as-of", syn_asof, "snapshot date YYYY-MM-DD");
    sc_syngen->add_option("--attachment", syn_attach, "edge sampling: uniform|preferential");

    // build
    auto* sc_build = app.add_subcommand("build", "build a multi-layer network from a CSV bundle");
    std::string build_in, build_out;
    BuildArgs build_args;
    sc_build->add_option("--in", build_in, "input bundle directory")->required();
    sc_build->add_option("--out", build_out, "output network JSON file")->required();
    add_build_flags(sc_build, build_args, true);

    // stats
    auto* sc_stats = app.add_subcommand("stats", "per-layer statistics suite");
    std::string stats_network, stats_out;
    sc_stats->add_option("--network", stats_network, "network JSON file")->required();
    sc_stats->add_option("--out", stats_out, "output CSV file")->required();

    // profile
    auto* sc_profile = app.add_subcommand("profile", "degree vs clustering per node");
    std::string profile_network, profile_layer, profile_out;
    sc_profile->add_option("--network", profile_network, "network JSON file")->required();
    sc_profile->add_option("--layer", profile_layer, "layer name")->required();
    sc_profile->add_option("--out", profile_out, "output CSV file")->required();

    auto add_sample_flags = [](CLI::App* sub, SampleArgs& a) {
        sub->add_option("--network", a.network_path, "network JSON file")->required();
        sub->add_option("--layer", a.layer, "layer name")->required();
        sub->add_option("--direction", a.direction, "strength direction: in|out (default in)");
        sub->add_option("--scale", a.scale, "EUR per model unit (default 1e7)");
        sub->add_flag("--unweighted", a.unweighted, "use plain degree counts");
    };

    // fit
    auto* sc_fit = app.add_subcommand("fit", "fit one candidate distribution");
    SampleArgs fit_sample;
    std::string fit_kind = "truncated_power_law";
    bool fit_tail = false;
    double fit_xmin = 0.0;
    std::string fit_out;
    add_sample_flags(sc_fit, fit_sample);
    sc_fit->add_option("--kind", fit_kind,
                       "power_law|truncated_power_law|lognormal|exponential "
                       "(default truncated_power_law)");
    sc_fit->add_flag("--tail-only", fit_tail, "estimate x_min instead of fitting the full range");
    sc_fit->add_option("--xmin", fit_xmin, "fit at this fixed x_min (model units)");
    sc_fit->add_option("--out", fit_out, "output JSON file")->required();

    // compare
    auto* sc_compare = app.add_subcommand("compare", "fit and score all four candidates");
    SampleArgs cmp_sample;
    bool cmp_tail = false;
    std::string cmp_out;
    add_sample_flags(sc_compare, cmp_sample);
    sc_compare->add_flag("--tail-only", cmp_tail, "per-candidate x_min estimation");
    sc_compare->add_option("--out", cmp_out, "output JSON file")->required();

    // bootstrap
    auto* sc_boot = app.add_subcommand("bootstrap", "semi-parametric goodness-of-fit test");
    SampleArgs boot_sample;
    std::string boot_kind = "truncated_power_law";
    bool boot_tail = false;
    std::size_t boot_b = 200;
    double boot_sig = 0.10;
    std::uint64_t boot_seed = 1;
    int boot_threads = 0;
    std::string boot_out;
    add_sample_flags(sc_boot, boot_sample);
    sc_boot->add_option("--kind", boot_kind, "candidate to test (default truncated_power_law)");
    sc_boot->add_flag("--tail-only", boot_tail, "re-estimate x_min inside each iteration");
    sc_boot->add_option("--bootstrap-B", boot_b, "bootstrap iterations (default 200)");
    sc_boot->add_option("--significance", boot_sig, "rejection level (default 0.10)");
    sc_boot->add_option("--seed", boot_seed, "bootstrap seed (default 1)");
    sc_boot->add_option("--threads", boot_threads,
                        "worker threads (default NETSTRATA_THREADS or 1)");
    sc_boot->add_option("--out", boot_out, "output JSON file")->required();

    // centrality
    auto* sc_cent = app.add_subcommand("centrality", "node centrality scores");
    std::string cent_network, cent_layer, cent_measure, cent_out;
    double cent_damping = 0.85;
    sc_cent->add_option("--network", cent_network, "network JSON file")->required();
    sc_cent->add_option("--layer", cent_layer, "restrict to one layer (default all)");
    sc_cent->add_option("--measure", cent_measure, "restrict to one measure (default all)");
    sc_cent->add_option("--damping", cent_damping, "PageRank damping (default 0.85)");
    sc_cent->add_option("--out", cent_out, "output CSV file")->required();

    // correlation
    auto* sc_corr = app.add_subcommand("correlation", "cross-layer rank correlations");
    std::string corr_network, corr_measure, corr_out;
    sc_corr->add_option("--network", corr_network, "network JSON file")->required();
    sc_corr->add_option("--measure", corr_measure, "restrict to one measure (default all)");
    sc_corr->add_option("--out", corr_out, "output CSV file")->required();

    // topk
    auto* sc_topk = app.add_subcommand("topk", "top-ranked nodes for one measure");
    std::string topk_network, topk_layer, topk_measure, topk_out;
    std::size_t topk_k = 10;
    double topk_damping = 0.85;
    sc_topk->add_option("--network", topk_network, "network JSON file")->required();
    sc_topk->add_option("--layer", topk_layer, "layer name")->required();
    sc_topk->add_option("--measure", topk_measure, "centrality measure")->required();
    sc_topk->add_option("--k", topk_k, "list length (default 10)");
    sc_topk->add_option("--damping", topk_damping, "PageRank damping (default 0.85)");
    sc_topk->add_option("--out", topk_out, "output CSV file")->required();

    // report
    auto* sc_report = app.add_subcommand("report", "full pipeline: every table and figure dataset");
    ReportArgs report_args;
    sc_report->add_option("--in", report_args.in_dir, "input bundle directory")->required();
    sc_report->add_option("--out", report_args.out_dir, "output directory")->required();
    add_build_flags(sc_report, report_args.build, false);
    sc_report->add_option("--direction", report_args.direction,
                          "strength direction for the fits (default in)");
    sc_report->add_option("--scale", report_args.scale, "EUR per model unit (default 1e7)");
    sc_report->add_option("--damping", report_args.damping, "PageRank damping (default 0.85)");
    sc_report->add_option("--bootstrap-B", report_args.bootstrap_b,
                          "bootstrap iterations (default 200)");
    sc_report->add_option("--significance", report_args.significance,
                          "bootstrap rejection level (default 0.10)");
    sc_report->add_option("--seed", report_args.seed, "bootstrap seed (default 1)");
    sc_report->add_option("--threads", report_args.threads,
                          "worker threads (default NETSTRATA_THREADS or 1)");
    sc_report->add_flag("--tail-only", report_args.tail_only,
                        "tail-mode fits and bootstrap instead of full range");
    sc_report->add_option("--top-k", report_args.top_k, "ranking length (default 10)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e, out, err);
        emit_error(err, "cli.usage", e.what());
        return 1;
    }

    try {
        if (sc_syngen->parsed()) {
            std::map<std::string, std::string> overrides;
            auto opt = [&](const char* name, const std::string& value) {
                if (sc_syngen->count(std::string("--") + name) > 0) overrides[name] = value;
            };
            opt("seed", syn_seed);
            opt("groups", syn_groups);
            opt("externals", syn_externals);
            opt("entities-min", syn_emin);
            opt("entities-max", syn_emax);
            opt("scale", syn_scale);
            opt("as-of", syn_asof);
            opt("attachment", syn_attach);
            return cmd_syngen(syn_out, syn_config, overrides);
        }
        if (sc_build->parsed()) return cmd_build(build_in, build_out, build_args);
        if (sc_stats->parsed()) return cmd_stats(stats_network, stats_out);
        if (sc_profile->parsed()) return cmd_profile(profile_network, profile_layer, profile_out);
        if (sc_fit->parsed()) return cmd_fit(fit_sample, fit_kind, fit_tail, fit_xmin, fit_out);
        if (sc_compare->parsed()) return cmd_compare(cmp_sample, cmp_tail, cmp_out);
        if (sc_boot->parsed())
            return cmd_bootstrap(boot_sample, boot_kind, boot_tail, boot_b, boot_sig, boot_seed,
                                 boot_threads, boot_out);
        if (sc_cent->parsed())
            return cmd_centrality(cent_network, cent_out, cent_layer, cent_measure, cent_damping);
        if (sc_corr->parsed()) return cmd_correlation(corr_network, corr_out, corr_measure);
        if (sc_topk->parsed())
            return cmd_topk(topk_network, topk_layer, topk_measure, topk_k, topk_damping,
                            topk_out);
        if (sc_report->parsed()) return cmd_report(report_args);
        emit_error(err, "cli.usage", "no subcommand given");
        return 1;
    } catch (const Error& e) {
        emit_error(err, e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error(err, "cli.internal", e.what());
        return 1;
    }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace netstrata::cli
