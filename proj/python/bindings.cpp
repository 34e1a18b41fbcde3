#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "netstrata/centrality.hpp"
#include "netstrata/cli.hpp"
#include "netstrata/error.hpp"
#include "netstrata/graphstats.hpp"
#include "netstrata/heavytail.hpp"
#include "netstrata/netbuild.hpp"
#include "netstrata/registry.hpp"
#include "netstrata/syngen.hpp"

namespace py = pybind11;
using namespace netstrata;

namespace {

net::LayerName layer_of(const std::string& s) {
    auto name = net::parse_layer_name(s);
    if (!name) throw py::value_error("unknown layer: " + s);
    return *name;
}

ht::CandidateKind kind_of(const std::string& s) {
    auto k = ht::parse_kind(s);
    if (!k) throw py::value_error("unknown candidate kind: " + s);
    return *k;
}

ht::Direction direction_of(const std::string& s) {
    auto d = ht::parse_direction(s);
    if (!d) throw py::value_error("unknown direction: " + s);
    return *d;
}

// Free-standing sample wrapper for the fitting entry points.
ht::DegreeSample sample_of(std::vector<double> values) {
    ht::DegreeSample sample;
    sample.values = std::move(values);
    sample.scale = 1.0;
    return sample;
}

py::dict fit_dict(const ht::FitResult& fit) {
    py::dict d;
    d["kind"] = std::string(ht::to_string(fit.kind));
    py::dict params;
    for (const auto& [name, value] : fit.params) params[py::str(name)] = value;
    d["params"] = params;
    d["x_min"] = fit.x_min;
    d["n_tail"] = fit.n_tail;
    d["log_likelihood"] = fit.log_likelihood;
    d["ks_distance"] = fit.ks_distance;
    d["thin_tail"] = fit.thin_tail;
    return d;
}

py::dict stats_dict(const stats::GraphStats& s) {
    py::dict d;
    d["n_nodes"] = s.n_nodes;
    d["n_edges"] = s.n_edges;
    d["n_components"] = s.n_components;
    d["largest_comp_node_share"] = s.largest_comp_node_share;
    d["largest_comp_edge_share"] = s.largest_comp_edge_share;
    d["diameter_largest_comp"] = s.diameter_largest_comp;
    d["avg_clustering"] = s.avg_clustering;
    if (s.reciprocity)
        d["reciprocity"] = *s.reciprocity;
    else
        d["reciprocity"] = py::none();
    d["density"] = s.density;
    d["global_efficiency"] = s.global_efficiency;
    d["herfindahl"] = s.herfindahl;
    return d;
}

}  // namespace

PYBIND11_MODULE(_netstrata, m) {
    m.doc() = "Multi-layer interbank network construction and heavy-tail analysis";
    m.attr("__version__") = NETSTRATA_VERSION;

    py::register_exception<Error>(m, "NetstrataError");

    py::class_<net::MultiLayerNetwork>(m, "Network")
        .def_property_readonly("nodes",
                               [](const net::MultiLayerNetwork& n) { return n.nodes; })
        .def_property_readonly(
            "level",
            [](const net::MultiLayerNetwork& n) { return std::string(net::to_string(n.level)); })
        .def_property_readonly("layers",
                               [](const net::MultiLayerNetwork& n) {
                                   std::vector<std::string> names;
                                   for (const auto& [name, layer] : n.layers) {
                                       (void)layer;
                                       names.emplace_back(net::to_string(name));
                                   }
                                   return names;
                               })
        .def("edge_count",
             [](const net::MultiLayerNetwork& n, const std::string& layer) {
                 return n.layer(layer_of(layer)).edge_count();
             })
        .def("total_weight",
             [](const net::MultiLayerNetwork& n, const std::string& layer) {
                 return n.layer(layer_of(layer)).total_weight();
             })
        .def("edges",
             [](const net::MultiLayerNetwork& n, const std::string& layer) {
                 const auto& l = n.layer(layer_of(layer));
                 std::vector<std::tuple<std::string, std::string, double>> out;
                 out.reserve(l.edges.size());
                 for (const auto& [key, weight] : l.edges)
                     out.emplace_back(n.nodes[key.first], n.nodes[key.second], weight);
                 return out;
             })
        .def("__repr__", [](const net::MultiLayerNetwork& n) {
            std::ostringstream s;
            s << "<Network level=" << net::to_string(n.level) << " nodes=" << n.nodes.size()
              << " layers=" << n.layers.size() << ">";
            return s.str();
        });

    m.def(
        "load_network",
        [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw Error("cli.input", "cannot open " + path);
            return net::from_json_stream(in);
        },
        py::arg("path"), "Load a network from its JSON interchange file.");

    m.def(
        "generate_bundle",
        [](const std::string& out_dir, std::uint64_t seed, std::size_t groups) {
            syn::SynConfig config = syn::SynConfig::defaults();
            config.seed = seed;
            if (groups > 0) config.n_groups = groups;
            auto output = syn::generate(config);
            syn::write_bundle(output, config, out_dir);
        },
        py::arg("out_dir"), py::arg("seed") = 1, py::arg("groups") = 0,
        "Write a synthetic CSV bundle with default paper-shaped settings.");

    m.def(
        "layer_stats",
        [](const net::MultiLayerNetwork& network, const std::string& layer) {
            return stats_dict(
                stats::layer_stats(network.layer(layer_of(layer)), network.nodes.size()));
        },
        py::arg("network"), py::arg("layer"));

    m.def(
        "stats_suite",
        [](const net::MultiLayerNetwork& network) {
            py::dict out;
            for (const auto& row : stats::stats_suite(network))
                out[py::str(row.row)] = stats_dict(row.stats);
            return out;
        },
        py::arg("network"), "Table-1 statistics, keyed by layer row name.");

    m.def(
        "degree_sample",
        [](const net::MultiLayerNetwork& network, const std::string& layer,
           const std::string& direction, double scale, bool weighted) {
            return ht::weighted_degree_sample(network, layer_of(layer), direction_of(direction),
                                              scale, weighted)
                .values;
        },
        py::arg("network"), py::arg("layer"), py::arg("direction") = "in",
        py::arg("scale") = 1e7, py::arg("weighted") = true);

    m.def(
        "fit_mle",
        [](const std::string& kind, std::vector<double> values, double x_min) {
            return fit_dict(ht::fit_mle(kind_of(kind), sample_of(std::move(values)), x_min));
        },
        py::arg("kind"), py::arg("values"), py::arg("x_min"));

    m.def(
        "estimate_xmin",
        [](const std::string& kind, std::vector<double> values) {
            return fit_dict(ht::estimate_xmin(kind_of(kind), sample_of(std::move(values))));
        },
        py::arg("kind"), py::arg("values"));

    m.def(
        "compare",
        [](std::vector<double> values) {
            auto sample = sample_of(std::move(values));
            double minv = *std::min_element(sample.values.begin(), sample.values.end());
            std::vector<ht::FitResult> fits;
            for (auto kind : ht::all_kinds()) fits.push_back(ht::fit_mle(kind, sample, minv));
            auto sel = ht::selection_score(fits, sample);
            py::dict d;
            py::list fit_list;
            for (const auto& f : fits) fit_list.append(fit_dict(f));
            d["fits"] = fit_list;
            py::dict scores;
            for (const auto& [kind, score] : sel.scores)
                scores[py::str(ht::to_string(kind))] = score;
            d["scores"] = scores;
            d["winner"] = std::string(ht::to_string(sel.winner));
            d["tie"] = sel.tie;
            return d;
        },
        py::arg("values"), "Full-range fit of all four candidates plus selection scores.");

    m.def(
        "sample_from",
        [](const std::string& kind, const py::dict& params, double x_min, std::size_t n,
           std::uint64_t seed) {
            ht::FitResult fit;
            fit.kind = kind_of(kind);
            for (auto item : params)
                fit.params[py::cast<std::string>(item.first)] = py::cast<double>(item.second);
            fit.x_min = x_min;
            return ht::sample_from(fit, n, seed);
        },
        py::arg("kind"), py::arg("params"), py::arg("x_min"), py::arg("n"), py::arg("seed") = 1);

    m.def(
        "bootstrap_gof",
        [](const std::string& kind, std::vector<double> values, std::size_t b_iterations,
           bool tail_only, double significance, std::uint64_t seed, int threads) {
            ht::BootstrapOptions options;
            options.b_iterations = b_iterations;
            options.tail_only = tail_only;
            options.significance = significance;
            options.seed = seed;
            options.threads = threads;
            auto report = ht::bootstrap_gof(kind_of(kind), sample_of(std::move(values)), options);
            py::dict d;
            d["empirical_fit"] = fit_dict(report.empirical_fit);
            d["empirical_ks"] = report.empirical_ks;
            d["bootstrap_ks"] = report.bootstrap_ks;
            d["p_value"] = report.p_value;
            d["reject_h0"] = report.reject_h0;
            d["b_requested"] = report.b_requested;
            d["b_effective"] = report.b_effective;
            d["seed"] = report.seed;
            d["significance"] = report.significance;
            d["thin_tail"] = report.thin_tail;
            return d;
        },
        py::arg("kind"), py::arg("values"), py::arg("b_iterations") = 200,
        py::arg("tail_only") = false, py::arg("significance") = 0.10, py::arg("seed") = 1,
        py::arg("threads") = 1);

    m.def(
        "centrality",
        [](const net::MultiLayerNetwork& network, const std::string& layer,
           const std::string& measure) {
            auto m_ = cent::parse_measure(measure);
            if (!m_) throw py::value_error("unknown measure: " + measure);
            auto cv = cent::compute(network, layer_of(layer), *m_);
            py::dict d;
            for (const auto& [node, score] : cv.scores) d[py::str(node)] = score;
            return d;
        },
        py::arg("network"), py::arg("layer"), py::arg("measure"));

    m.def(
        "kendall_tau",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return cent::kendall_tau(a, b);
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) { return cli::run(args); },
        py::arg("args"), "Run a netstrata CLI invocation in-process; returns the exit code.");
}
