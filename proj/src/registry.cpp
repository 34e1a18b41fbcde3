#include "netstrata/registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "netstrata/csv.hpp"
#include "netstrata/error.hpp"
#include "netstrata/util.hpp"

namespace netstrata::registry {

namespace {

// Tarjan strongly connected components over the qualifying-link digraph.
// Only cycles that pass through a head are fatal; cycles among non-head
// subsidiaries (e.g. cross-shareholdings) do not make group assignment
// ambiguous because path strength is still well defined.
std::vector<std::vector<std::string>> strongly_connected(
    const std::vector<std::string>& ids,
    const std::unordered_map<std::string, std::vector<std::pair<std::string, double>>>& adj) {
    std::unordered_map<std::string, int> index, low;
    std::unordered_set<std::string> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> components;
    int counter = 0;

    // Iterative Tarjan; explicit frame stack to survive deep chains.
    struct Frame {
        std::string node;
        std::size_t next_child = 0;
    };
    for (const auto& root : ids) {
        if (index.count(root)) continue;
        std::vector<Frame> frames{{root}};
        while (!frames.empty()) {
            Frame& fr = frames.back();
            const std::string& v = fr.node;
            if (fr.next_child == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack.insert(v);
            }
            bool descended = false;
            auto it = adj.find(v);
            if (it != adj.end()) {
                while (fr.next_child < it->second.size()) {
                    const std::string& w = it->second[fr.next_child].first;
                    ++fr.next_child;
                    if (!index.count(w)) {
                        frames.push_back({w});
                        descended = true;
                        break;
                    }
                    if (on_stack.count(w)) low[v] = std::min(low[v], index[w]);
                }
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<std::string> comp;
                while (true) {
                    std::string w = stack.back();
                    stack.pop_back();
                    on_stack.erase(w);
                    comp.push_back(w);
                    if (w == v) break;
                }
                components.push_back(std::move(comp));
            }
            std::string done = v;
            frames.pop_back();
            if (!frames.empty()) {
                low[frames.back().node] = std::min(low[frames.back().node], low[done]);
            }
        }
    }
    return components;
}

}  // namespace

GroupMap resolve_groups(const std::vector<Entity>& entities, const std::vector<ControlLink>& links,
                        const std::set<std::string>& heads, double control_threshold,
                        const std::vector<Override>& overrides) {
    if (!(control_threshold > 0.0 && control_threshold <= 1.0))
        fail("registry.threshold", "control_threshold must lie in (0, 1]");

    std::unordered_set<std::string> known;
    for (const auto& e : entities) {
        if (e.entity_id.empty()) fail("registry.entity", "empty entity_id");
        if (!known.insert(e.entity_id).second)
            fail("registry.entity", "duplicate entity_id: " + e.entity_id);
    }
    for (const auto& h : heads)
        if (!known.count(h)) fail("registry.head", "unknown head entity_id: " + h);

    std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> adj;
    std::vector<std::string> link_ids;
    for (const auto& l : links) {
        if (!known.count(l.parent_id))
            fail("registry.link", "unknown entity_id in link: " + l.parent_id);
        if (!known.count(l.child_id))
            fail("registry.link", "unknown entity_id in link: " + l.child_id);
        if (l.parent_id == l.child_id)
            fail("registry.link", "self-link on entity: " + l.parent_id);
        if (!(l.equity_share >= 0.0 && l.equity_share <= 1.0))
            fail("registry.link", "equity_share outside [0,1] on link " + l.parent_id + "->" +
                                      l.child_id);
        if (l.equity_share > control_threshold) {
            if (adj.find(l.parent_id) == adj.end()) link_ids.push_back(l.parent_id);
            adj[l.parent_id].emplace_back(l.child_id, l.equity_share);
        }
    }
    // Deterministic traversal order.
    std::sort(link_ids.begin(), link_ids.end());
    for (auto& [id, out] : adj) std::sort(out.begin(), out.end());

    for (const auto& comp : strongly_connected(link_ids, adj)) {
        if (comp.size() < 2) continue;
        bool has_head = std::any_of(comp.begin(), comp.end(),
                                    [&](const std::string& id) { return heads.count(id) != 0; });
        if (has_head) {
            std::vector<std::string> sorted(comp.begin(), comp.end());
            std::sort(sorted.begin(), sorted.end());
            std::string msg = "control cycle through a group head:";
            for (const auto& id : sorted) msg += " " + id;
            fail("registry.cycle", msg);
        }
    }

    GroupMap out;
    out.head_ids = heads;
    // strength = best bottleneck share seen so far; heads processed in sorted
    // order so equal strengths keep the lexicographically smaller head.
    std::unordered_map<std::string, std::pair<double, std::string>> best;
    for (const auto& head : heads) {
        out.membership[head] = head;
        // Max-bottleneck search from this head.
        std::priority_queue<std::pair<double, std::string>> pq;
        std::unordered_map<std::string, double> strength;
        pq.push({2.0, head});  // above any share; the head itself is not contested
        while (!pq.empty()) {
            auto [s, v] = pq.top();
            pq.pop();
            auto sit = strength.find(v);
            if (sit != strength.end() && sit->second >= s) continue;
            strength[v] = s;
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (const auto& [child, share] : it->second) {
                double ns = std::min(s, share);
                auto cit = strength.find(child);
                if (cit == strength.end() || cit->second < ns) pq.push({ns, child});
            }
        }
        for (const auto& [id, s] : strength) {
            if (id == head || heads.count(id)) continue;  // heads stay their own group
            auto bit = best.find(id);
            if (bit == best.end() || s > bit->second.first) best[id] = {s, head};
        }
    }
    for (const auto& [id, sh] : best) out.membership[id] = sh.second;

    for (const auto& ov : overrides) {
        if (!known.count(ov.entity_id))
            fail("registry.override", "unknown entity_id in override: " + ov.entity_id);
        if (!heads.count(ov.head_id))
            fail("registry.override", "override head is not a group head: " + ov.head_id);
        if (heads.count(ov.entity_id))
            fail("registry.override", "cannot override group head: " + ov.entity_id);
        out.membership[ov.entity_id] = ov.head_id;
    }
    return out;
}

EnrichResult enrich_groups(const GroupMap& groups, const std::vector<BalanceRecord>& records) {
    EnrichResult out;
    for (const auto& head : groups.head_ids) out.profiles[head] = GroupProfile{head, {}, {}};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if ((r.tier1_capital && r.tier1_capital->cents < 0) ||
            (r.total_assets && r.total_assets->cents < 0))
            fail("registry.balance",
                 "negative amount in balance record " + std::to_string(i) + " (" + r.entity_id + ")");
        auto it = out.profiles.find(r.entity_id);
        if (it == out.profiles.end()) {
            ++out.ignored_non_head_records;
            continue;
        }
        it->second.tier1_capital = r.tier1_capital;
        it->second.total_assets = r.total_assets;
    }
    return out;
}

namespace {

std::vector<std::string> read_header(csv::Reader& reader, const std::vector<std::string>& expect,
                                     const char* what) {
    auto row = reader.next();
    if (!row) fail("csv.header", std::string(what) + ": empty file");
    for (auto& f : *row) f = std::string(trim(f));
    for (const auto& col : expect)
        if (std::find(row->begin(), row->end(), col) == row->end())
            fail("csv.header", std::string(what) + ": missing required column '" + col + "'");
    return *row;
}

std::size_t col_index(const std::vector<std::string>& header, const std::string& name) {
    return std::size_t(std::find(header.begin(), header.end(), name) - header.begin());
}

[[noreturn]] void row_fail(const char* what, std::size_t line, const std::string& msg) {
    fail("csv.row", std::string(what) + " line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::vector<Entity> load_entities_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header =
        read_header(reader, {"entity_id", "name", "country", "is_credit_institution"}, "entities");
    std::size_t cid = col_index(header, "entity_id"), cname = col_index(header, "name"),
                ccountry = col_index(header, "country"),
                cci = col_index(header, "is_credit_institution");
    std::vector<Entity> out;
    while (auto row = reader.next()) {
        if (row->size() < header.size()) row_fail("entities", reader.line(), "too few fields");
        Entity e;
        e.entity_id = std::string(trim((*row)[cid]));
        e.name = (*row)[cname];
        e.country = std::string(trim((*row)[ccountry]));
        std::string ci = std::string(trim((*row)[cci]));
        if (e.entity_id.empty()) row_fail("entities", reader.line(), "empty entity_id");
        if (e.country.size() != 2) row_fail("entities", reader.line(), "country must be alpha-2");
        if (ci == "true" || ci == "1")
            e.is_credit_institution = true;
        else if (ci == "false" || ci == "0")
            e.is_credit_institution = false;
        else
            row_fail("entities", reader.line(), "bad is_credit_institution: " + ci);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<ControlLink> load_control_links_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header = read_header(reader, {"parent_id", "child_id", "equity_share"}, "control_links");
    std::size_t cp = col_index(header, "parent_id"), cc = col_index(header, "child_id"),
                cs = col_index(header, "equity_share");
    std::vector<ControlLink> out;
    while (auto row = reader.next()) {
        if (row->size() < header.size()) row_fail("control_links", reader.line(), "too few fields");
        ControlLink l;
        l.parent_id = std::string(trim((*row)[cp]));
        l.child_id = std::string(trim((*row)[cc]));
        try {
            l.equity_share = std::stod(std::string(trim((*row)[cs])));
        } catch (const std::exception&) {
            row_fail("control_links", reader.line(), "bad equity_share");
        }
        if (!(l.equity_share >= 0.0 && l.equity_share <= 1.0))
            row_fail("control_links", reader.line(), "equity_share outside [0,1]");
        if (l.parent_id.empty() || l.child_id.empty())
            row_fail("control_links", reader.line(), "empty id");
        out.push_back(std::move(l));
    }
    return out;
}

std::set<std::string> load_group_heads_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header = read_header(reader, {"entity_id"}, "group_heads");
    std::size_t cid = col_index(header, "entity_id");
    std::set<std::string> out;
    while (auto row = reader.next()) {
        if (row->size() < header.size()) row_fail("group_heads", reader.line(), "too few fields");
        std::string id = std::string(trim((*row)[cid]));
        if (id.empty()) row_fail("group_heads", reader.line(), "empty entity_id");
        out.insert(id);
    }
    return out;
}

std::vector<BalanceRecord> load_balance_sheet_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header =
        read_header(reader, {"entity_id", "tier1_capital", "total_assets"}, "balance_sheet");
    std::size_t cid = col_index(header, "entity_id"), ct = col_index(header, "tier1_capital"),
                ca = col_index(header, "total_assets");
    std::vector<BalanceRecord> out;
    while (auto row = reader.next()) {
        if (row->size() < header.size()) row_fail("balance_sheet", reader.line(), "too few fields");
        BalanceRecord r;
        r.entity_id = std::string(trim((*row)[cid]));
        if (r.entity_id.empty()) row_fail("balance_sheet", reader.line(), "empty entity_id");
        auto parse_opt = [&](std::size_t col) -> std::optional<Money> {
            std::string s = std::string(trim((*row)[col]));
            if (s.empty()) return std::nullopt;
            auto m = parse_money(s);
            if (!m) row_fail("balance_sheet", reader.line(), "bad amount: " + s);
            return m;
        };
        r.tier1_capital = parse_opt(ct);
        r.total_assets = parse_opt(ca);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Override> load_overrides_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header = read_header(reader, {"entity_id", "head_id"}, "overrides");
    std::size_t ce = col_index(header, "entity_id"), ch = col_index(header, "head_id");
    std::vector<Override> out;
    while (auto row = reader.next()) {
        if (row->size() < header.size()) row_fail("overrides", reader.line(), "too few fields");
        Override ov{std::string(trim((*row)[ce])), std::string(trim((*row)[ch]))};
        if (ov.entity_id.empty() || ov.head_id.empty())
            row_fail("overrides", reader.line(), "empty id");
        out.push_back(std::move(ov));
    }
    return out;
}

}  // namespace netstrata::registry
