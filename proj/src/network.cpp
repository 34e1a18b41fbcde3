#include "netstrata/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "netstrata/error.hpp"

namespace netstrata::net {

using json = nlohmann::ordered_json;

const char* to_string(LayerName name) {
    switch (name) {
        case LayerName::st_cred: return "st_cred";
        case LayerName::lt_cred: return "lt_cred";
        case LayerName::cross_sec: return "cross_sec";
        case LayerName::st_fund: return "st_fund";
        case LayerName::ovrl_portfl: return "ovrl_portfl";
        case LayerName::flat: return "flat";
    }
    return "flat";
}

std::optional<LayerName> parse_layer_name(const std::string& s) {
    for (auto n : all_layers())
        if (s == to_string(n)) return n;
    return std::nullopt;
}

const std::vector<LayerName>& market_layers() {
    static const std::vector<LayerName> v{LayerName::st_cred, LayerName::lt_cred,
                                         LayerName::cross_sec, LayerName::st_fund,
                                         LayerName::ovrl_portfl};
    return v;
}

const std::vector<LayerName>& all_layers() {
    static const std::vector<LayerName> v{LayerName::st_cred,     LayerName::lt_cred,
                                          LayerName::cross_sec,   LayerName::st_fund,
                                          LayerName::ovrl_portfl, LayerName::flat};
    return v;
}

const char* to_string(Level level) { return level == Level::group ? "group" : "entity"; }

std::optional<Level> parse_level(const std::string& s) {
    if (s == "group") return Level::group;
    if (s == "entity") return Level::entity;
    return std::nullopt;
}

void Layer::add_weight(NodeIndex src, NodeIndex dst, double w) {
    if (src == dst) fail("layer.self_loop", "self-loop rejected");
    if (!(w > 0.0) || !std::isfinite(w)) fail("layer.weight", "edge weight must be positive finite");
    if (!directed && src > dst) std::swap(src, dst);
    edges[{src, dst}] += w;
}

double Layer::total_weight() const {
    double sum = 0.0;
    for (const auto& [key, w] : edges) sum += w;
    return sum;
}

NodeIndex MultiLayerNetwork::index_of(const std::string& node_id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), node_id);
    if (it == nodes.end() || *it != node_id) fail("network.node", "unknown node: " + node_id);
    return static_cast<NodeIndex>(it - nodes.begin());
}

const Layer& MultiLayerNetwork::layer(LayerName name) const {
    auto it = layers.find(name);
    if (it == layers.end())
        fail("network.layer", std::string("layer not present: ") + to_string(name));
    return it->second;
}

Layer symmetrize(const Layer& layer) {
    if (layer.directed) fail("layer.symmetrize", "layer is already directed");
    Layer out;
    out.name = layer.name;
    out.directed = true;
    for (const auto& [key, w] : layer.edges) {
        out.edges[{key.first, key.second}] = w;
        out.edges[{key.second, key.first}] = w;
    }
    return out;
}

Layer flatten(const MultiLayerNetwork& network) {
    bool any = false;
    Layer out;
    out.name = LayerName::flat;
    out.directed = true;
    for (const auto& [name, layer] : network.layers) {
        if (name == LayerName::flat) continue;
        any = true;
        if (layer.directed) {
            for (const auto& [key, w] : layer.edges) out.edges[key] += w;
        } else {
            for (const auto& [key, w] : layer.edges) {
                out.edges[{key.first, key.second}] += w;
                out.edges[{key.second, key.first}] += w;
            }
        }
    }
    if (!any) fail("network.flatten", "no non-flat layers to aggregate");
    return out;
}

void to_json_stream(const MultiLayerNetwork& network, std::ostream& out) {
    json doc;
    doc["nodes"] = json::array();
    for (const auto& id : network.nodes) {
        json n;
        n["id"] = id;
        auto pit = network.profiles.find(id);
        if (pit != network.profiles.end() && pit->second.tier1_capital)
            n["tier1"] = pit->second.tier1_capital->eur();
        else
            n["tier1"] = nullptr;
        if (pit != network.profiles.end() && pit->second.total_assets)
            n["total_assets"] = pit->second.total_assets->eur();
        else
            n["total_assets"] = nullptr;
        doc["nodes"].push_back(std::move(n));
    }
    doc["level"] = to_string(network.level);
    doc["layers"] = json::array();
    for (const auto& [name, layer] : network.layers) {
        json l;
        l["name"] = to_string(name);
        l["directed"] = layer.directed;
        l["edges"] = json::array();
        for (const auto& [key, w] : layer.edges) {
            json e;
            e["src"] = network.nodes[key.first];
            e["dst"] = network.nodes[key.second];
            e["weight"] = w;
            l["edges"].push_back(std::move(e));
        }
        doc["layers"].push_back(std::move(l));
    }
    out << doc.dump(2) << '\n';
}

MultiLayerNetwork from_json_stream(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        fail("network.json", std::string("malformed network JSON: ") + e.what());
    }
    MultiLayerNetwork network;
    try {
        for (const auto& n : doc.at("nodes")) {
            std::string id = n.at("id").get<std::string>();
            network.nodes.push_back(id);
            registry::GroupProfile p;
            p.head_id = id;
            if (n.contains("tier1") && !n["tier1"].is_null())
                p.tier1_capital = Money{std::llround(n["tier1"].get<double>() * 100.0)};
            if (n.contains("total_assets") && !n["total_assets"].is_null())
                p.total_assets = Money{std::llround(n["total_assets"].get<double>() * 100.0)};
            network.profiles[id] = std::move(p);
        }
        auto level = parse_level(doc.at("level").get<std::string>());
        if (!level) fail("network.json", "bad level");
        network.level = *level;
        if (!std::is_sorted(network.nodes.begin(), network.nodes.end()))
            std::sort(network.nodes.begin(), network.nodes.end());
        if (std::adjacent_find(network.nodes.begin(), network.nodes.end()) != network.nodes.end())
            fail("network.json", "duplicate node id");
        for (const auto& l : doc.at("layers")) {
            auto name = parse_layer_name(l.at("name").get<std::string>());
            if (!name) fail("network.json", "unknown layer name: " + l.at("name").dump());
            Layer layer;
            layer.name = *name;
            layer.directed = l.at("directed").get<bool>();
            for (const auto& e : l.at("edges")) {
                NodeIndex s = network.index_of(e.at("src").get<std::string>());
                NodeIndex d = network.index_of(e.at("dst").get<std::string>());
                layer.add_weight(s, d, e.at("weight").get<double>());
            }
            network.layers[*name] = std::move(layer);
        }
    } catch (const json::exception& e) {
        fail("network.json", std::string("network JSON missing field: ") + e.what());
    }
    return network;
}

}  // namespace netstrata::net
