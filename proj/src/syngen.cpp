#include "netstrata/syngen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "netstrata/csv.hpp"
#include "netstrata/error.hpp"
#include "netstrata/specfun.hpp"

namespace netstrata::syn {

namespace {

using json = nlohmann::ordered_json;

// Stable substream indices; every stage draws from its own stream so a
// change in one stage never shifts another stage's output.
enum Stream : std::uint64_t {
    stream_registry = 0,
    stream_balance = 1,
    stream_external = 2,
    stream_layer_base = 10,
};

std::string fmt_id(const char* prefix, std::size_t k, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, k);
    return buf;
}

void validate(const SynConfig& c) {
    if (c.n_groups < 2) fail("syngen.config", "need at least two groups");
    if (c.entities_min < 1 || c.entities_max < c.entities_min)
        fail("syngen.config", "entities per group must satisfy 1 <= min <= max");
    if (!(c.scale > 0.0)) fail("syngen.config", "scale must be positive");
    for (const auto& [name, spec] : c.layers) {
        if (name == net::LayerName::flat)
            fail("syngen.config", "the flattened layer is derived, not generated");
        if (!(spec.density > 0.0 && spec.density <= 1.0))
            fail("syngen.config", std::string("density for ") + net::to_string(name) +
                                      " must lie in (0, 1]");
        if (spec.records_min < 1 || spec.records_max < spec.records_min)
            fail("syngen.config", "records per edge must satisfy 1 <= min <= max");
        if (!(spec.weights.x_min > 0.0))
            fail("syngen.config", "weight x_min must be positive");
        const auto& p = spec.weights.params;
        switch (spec.weights.kind) {
            case ht::CandidateKind::power_law:
                if (!p.count("alpha") || !(p.at("alpha") > 1.0))
                    fail("syngen.config", "power_law weights need alpha > 1");
                break;
            case ht::CandidateKind::truncated_power_law:
                if (!p.count("alpha") || !p.count("lambda") || !(p.at("alpha") > 0.0) ||
                    !(p.at("lambda") > 0.0))
                    fail("syngen.config",
                         "truncated_power_law weights need alpha > 0 and lambda > 0");
                break;
            case ht::CandidateKind::lognormal:
                if (!p.count("mu") || !p.count("sigma") || !(p.at("sigma") > 0.0))
                    fail("syngen.config", "lognormal weights need mu and sigma > 0");
                break;
            case ht::CandidateKind::exponential:
                if (!p.count("lambda") || !(p.at("lambda") > 0.0))
                    fail("syngen.config", "exponential weights need lambda > 0");
                break;
        }
    }
}

ht::FitResult as_fit(const WeightSpec& spec) {
    ht::FitResult f;
    f.kind = spec.kind;
    f.params = spec.params;
    f.x_min = spec.x_min;
    return f;
}

// Distinct node pairs, uniform or degree-preferential on the target side.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t count,
                                                              bool directed,
                                                              Attachment attachment, Rng& rng) {
    std::size_t max_pairs = n * (n - 1) / (directed ? 1 : 2);
    if (count > max_pairs)
        fail("syngen.config", "density target exceeds the number of distinct pairs");
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    std::vector<std::size_t> weight(n, 1);  // target-side degree + 1
    std::size_t total_weight = n;
    while (chosen.size() < count) {
        std::size_t a = rng.below(n);
        std::size_t b;
        if (attachment == Attachment::uniform) {
            b = rng.below(n);
        } else {
            std::size_t pick = rng.below(total_weight);
            b = 0;
            while (pick >= weight[b]) pick -= weight[b++];
        }
        if (a == b) continue;
        if (!directed && a > b) std::swap(a, b);
        if (chosen.insert({a, b}).second) {
            ++weight[b];
            ++total_weight;
        }
    }
    return {chosen.begin(), chosen.end()};
}

long long draw_cents(const ht::FitResult& law, double scale, Rng& rng) {
    double u = ht::draw_one(law, rng);
    long long cents = std::llround(u * scale * 100.0);
    return cents > 0 ? cents : 1;
}

// Cycles through a group's entities in shuffled order, only repeating once
// every member has taken a record. Spreading inflows across distinct
// subsidiaries keeps per-entity strengths close to single weight draws.
class EntityRotation {
public:
    explicit EntityRotation(std::size_t n_groups) : pending_(n_groups) {}

    const std::string& next(std::size_t g, const std::vector<std::vector<std::string>>& groups,
                            Rng& rng) {
        auto& q = pending_[g];
        if (q.empty()) {
            q.resize(groups[g].size());
            for (std::size_t i = 0; i < q.size(); ++i) q[i] = i;
            for (std::size_t i = q.size(); i > 1; --i) std::swap(q[i - 1], q[rng.below(i)]);
        }
        std::size_t idx = q.back();
        q.pop_back();
        return groups[g][idx];
    }

private:
    std::vector<std::vector<std::size_t>> pending_;
};

}  // namespace

SynConfig SynConfig::defaults() {
    SynConfig c;
    c.as_of = *Date::parse("2021-06-30");
    // Densities chosen so the reference layer sizes are realized exactly at
    // 114 groups: 525 / 901 / 2456 / 900 directed edges and 3614 pairs.
    // Record multiplicities keep per-entity loads near one granular record,
    // so entity-level strength samples track the configured weight law.
    double directed_pairs = 114.0 * 113.0;
    auto spec = [&](double edges, double pairs, std::size_t rmin, std::size_t rmax) {
        LayerSpec s;
        s.density = edges / pairs;
        s.weights.params["lambda"] = 0.0625;
        s.records_min = rmin;
        s.records_max = rmax;
        return s;
    };
    c.layers[net::LayerName::st_cred] = spec(525.0, directed_pairs, 4, 8);
    c.layers[net::LayerName::lt_cred] = spec(901.0, directed_pairs, 2, 6);
    c.layers[net::LayerName::cross_sec] = spec(2456.0, directed_pairs, 1, 3);
    c.layers[net::LayerName::st_fund] = spec(900.0, directed_pairs, 2, 6);
    c.layers[net::LayerName::ovrl_portfl] = spec(3614.0, directed_pairs / 2.0, 1, 1);
    return c;
}

SynOutput generate(const SynConfig& config) {
    validate(config);
    SynOutput out;

    // --- registry ---
    Rng reg_rng = Rng::derive(config.seed, stream_registry);
    static const char* countries[] = {"DE", "FR", "IT", "ES", "NL", "BE",
                                      "AT", "PT", "IE", "FI", "GR", "LU"};
    std::vector<std::vector<std::string>> group_entities(config.n_groups);
    for (std::size_t g = 0; g < config.n_groups; ++g) {
        std::string head = fmt_id("H", g + 1, 4);
        const char* country = countries[g % (sizeof countries / sizeof *countries)];
        out.entities.push_back({head, "Bank " + std::to_string(g + 1), country, true});
        out.heads.insert(head);
        out.partition[head] = head;
        group_entities[g].push_back(head);
        std::size_t span = config.entities_max - config.entities_min + 1;
        std::size_t count = config.entities_min + reg_rng.below(span);
        for (std::size_t k = 1; k < count; ++k) {
            std::string sub = head + "_S" + std::to_string(k);
            out.entities.push_back(
                {sub, "Bank " + std::to_string(g + 1) + " unit " + std::to_string(k), country,
                 reg_rng.below(4) != 0});
            // Chain off the head or an earlier unit, always above threshold.
            const std::string& parent =
                (k == 1 || reg_rng.below(2) == 0)
                    ? head
                    : group_entities[g][1 + reg_rng.below(k - 1)];
            double share = 0.51 + static_cast<double>(reg_rng.below(4900)) / 10000.0;
            out.links.push_back({parent, sub, share});
            out.partition[sub] = head;
            group_entities[g].push_back(sub);
        }
    }
    for (std::size_t x = 0; x < config.n_external; ++x) {
        std::string id = fmt_id("X", x + 1, 4);
        out.entities.push_back({id, "Holding " + std::to_string(x + 1),
                                countries[x % (sizeof countries / sizeof *countries)], false});
        // A minority stake keeps them outside every group.
        const std::string& holder = group_entities[x % config.n_groups].front();
        double share = 0.10 + static_cast<double>(reg_rng.below(3500)) / 10000.0;
        out.links.push_back({holder, id, share});
        out.external_entities.push_back(id);
    }

    // --- balance sheet (heads only) ---
    Rng bal_rng = Rng::derive(config.seed, stream_balance);
    for (std::size_t g = 0; g < config.n_groups; ++g) {
        double z = specfun::norm_quantile(bal_rng.uniform_pos());
        double assets = 2.0e10 * std::exp(1.1 * z);
        double ratio = 0.08 + 0.08 * bal_rng.uniform();
        registry::BalanceRecord r;
        r.entity_id = group_entities[g].front();
        r.total_assets = Money{std::llround(assets * 100.0)};
        r.tier1_capital = Money{std::llround(assets * ratio * 100.0)};
        out.balances.push_back(std::move(r));
    }

    auto pick_entity = [&](std::size_t g, Rng& rng) -> const std::string& {
        const auto& list = group_entities[g];
        return list[rng.below(list.size())];
    };

    // --- layers ---
    std::size_t isin_serial = 0;
    std::size_t issuer_serial = 0;
    int layer_index = 0;
    for (auto name : net::market_layers()) {
        Rng rng = Rng::derive(config.seed, stream_layer_base + layer_index++);
        auto it = config.layers.find(name);
        if (it == config.layers.end()) continue;
        const LayerSpec& spec = it->second;
        bool directed = name != net::LayerName::ovrl_portfl;
        double max_pairs =
            static_cast<double>(config.n_groups) * static_cast<double>(config.n_groups - 1) /
            (directed ? 1.0 : 2.0);
        auto count = static_cast<std::size_t>(std::llround(spec.density * max_pairs));
        if (count < 1)
            fail("syngen.config", std::string("density for ") + net::to_string(name) +
                                      " rounds to zero edges");
        auto pairs = sample_pairs(config.n_groups, count, directed, config.attachment, rng);
        ht::FitResult law = as_fit(spec.weights);
        long long& ledger = out.ledger_cents[name];
        out.edge_counts[name] = pairs.size();

        std::size_t rec_span = spec.records_max - spec.records_min + 1;
        std::size_t serial = 0;
        EntityRotation inflow(config.n_groups);  // borrower / issuer / giver side

        auto emit_record = [&](std::size_t ga, std::size_t gb) {
            long long cents = draw_cents(law, config.scale, rng);
            ledger += cents;
            switch (name) {
                case net::LayerName::st_cred:
                case net::LayerName::lt_cred: {
                    bool long_term = name == net::LayerName::lt_cred;
                    ingest::LoanRecord loan;
                    loan.creditor_id = pick_entity(ga, rng);
                    loan.debtor_id = inflow.next(gb, group_entities, rng);
                    static const ingest::InstrumentType types[] = {
                        ingest::InstrumentType::other, ingest::InstrumentType::credit_line,
                        ingest::InstrumentType::revolving_credit};
                    loan.instrument_type = types[serial % 3];
                    loan.outstanding_nominal = Money{cents};
                    if (long_term) {
                        loan.origination_date =
                            config.as_of.add_months(-1 - static_cast<int>(rng.below(36)));
                        loan.maturity_date = loan.origination_date.add_months(
                            3 + static_cast<int>(rng.below(118)));
                    } else {
                        loan.origination_date =
                            config.as_of.add_months(-1 - static_cast<int>(rng.below(2)));
                        loan.maturity_date = loan.origination_date.add_months(
                            1 + static_cast<int>(rng.below(2)));
                    }
                    loan.reference_date = config.as_of;
                    out.records.loans.push_back(std::move(loan));
                    break;
                }
                case net::LayerName::cross_sec: {
                    ingest::SecurityRef ref;
                    ref.isin = fmt_id("CS", ++isin_serial, 10);
                    ref.issuer_id = inflow.next(gb, group_entities, rng);
                    ref.kind = serial % 2 ? ingest::SecurityKind::equity
                                          : ingest::SecurityKind::debt;
                    ingest::HoldingRecord h;
                    h.holder_id = pick_entity(ga, rng);
                    h.isin = ref.isin;
                    h.market_value = Money{cents};
                    h.reference_date = config.as_of;
                    out.records.securities.push_back(std::move(ref));
                    out.records.holdings.push_back(std::move(h));
                    break;
                }
                case net::LayerName::st_fund: {
                    ingest::SftRecord t;
                    t.collateral_taker_id = pick_entity(ga, rng);
                    t.collateral_giver_id = inflow.next(gb, group_entities, rng);
                    t.kind = serial % 2 ? ingest::SftKind::buy_sellback
                                        : ingest::SftKind::repo;
                    t.open_amount = Money{cents};
                    t.open_date = config.as_of.add_months(-static_cast<int>(rng.below(4)));
                    if (rng.below(2) == 0)
                        t.close_date =
                            config.as_of.add_months(1 + static_cast<int>(rng.below(12)));
                    t.reference_date = config.as_of;
                    out.records.sfts.push_back(std::move(t));
                    break;
                }
                case net::LayerName::ovrl_portfl: {
                    // One fresh external issuer per record; the smaller of the
                    // two positions is exactly the intended overlap share.
                    ingest::SecurityRef ref;
                    ref.isin = fmt_id("OV", ++isin_serial, 10);
                    ref.issuer_id = fmt_id("U", ++issuer_serial, 5);
                    ref.kind = ingest::SecurityKind::debt;
                    long long extra = draw_cents(law, config.scale, rng);
                    ingest::HoldingRecord big, small;
                    big.holder_id = inflow.next(serial % 2 ? ga : gb, group_entities, rng);
                    small.holder_id = inflow.next(serial % 2 ? gb : ga, group_entities, rng);
                    big.isin = ref.isin;
                    small.isin = ref.isin;
                    big.market_value = Money{cents + extra};
                    small.market_value = Money{cents};
                    big.reference_date = config.as_of;
                    small.reference_date = config.as_of;
                    out.records.securities.push_back(std::move(ref));
                    out.records.holdings.push_back(std::move(big));
                    out.records.holdings.push_back(std::move(small));
                    break;
                }
                case net::LayerName::flat:
                    break;
            }
            ++serial;
        };

        for (const auto& [ga, gb] : pairs) {
            std::size_t rec_count = spec.records_min + rng.below(rec_span);
            for (std::size_t rec = 0; rec < rec_count; ++rec) emit_record(ga, gb);
        }

        // A few expired transactions exercise the snapshot filter without
        // touching the ledger.
        if (name == net::LayerName::st_fund) {
            std::size_t expired = pairs.size() / 20;
            for (std::size_t k = 0; k < expired; ++k) {
                const auto& [ga, gb] = pairs[k];
                ingest::SftRecord t;
                t.collateral_taker_id = pick_entity(ga, rng);
                t.collateral_giver_id = pick_entity(gb, rng);
                t.kind = ingest::SftKind::repo;
                t.open_amount = Money{draw_cents(law, config.scale, rng)};
                t.open_date = config.as_of.add_months(-6);
                t.close_date = config.as_of.add_months(-1);
                t.reference_date = config.as_of;
                out.records.sfts.push_back(std::move(t));
            }
        }
    }

    // Loans against the external holdings exercise the drop-and-count path;
    // their amounts never enter the ledger.
    if (!out.external_entities.empty() && config.layers.count(net::LayerName::lt_cred)) {
        Rng ext_rng = Rng::derive(config.seed, stream_external);
        ht::FitResult law = as_fit(config.layers.at(net::LayerName::lt_cred).weights);
        for (std::size_t x = 0; x < out.external_entities.size(); ++x) {
            ingest::LoanRecord loan;
            loan.creditor_id = group_entities[x % config.n_groups].front();
            loan.debtor_id = out.external_entities[x];
            loan.instrument_type = ingest::InstrumentType::other;
            loan.outstanding_nominal = Money{draw_cents(law, config.scale, ext_rng)};
            loan.origination_date = config.as_of.add_months(-12);
            loan.maturity_date = loan.origination_date.add_months(24);
            loan.reference_date = config.as_of;
            out.records.loans.push_back(std::move(loan));
        }
    }
    return out;
}

void write_bundle(const SynOutput& output, const SynConfig& config,
                  const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    auto open = [&](const char* file) {
        std::ofstream s(fs::path(directory) / file, std::ios::binary);
        if (!s) fail("syngen.write", std::string("cannot open ") + file + " for writing");
        return s;
    };

    {
        auto s = open("entities.csv");
        csv::write_row(s, {"entity_id", "name", "country", "is_credit_institution"});
        for (const auto& e : output.entities)
            csv::write_row(s, {e.entity_id, e.name, e.country,
                               e.is_credit_institution ? "true" : "false"});
    }
    {
        auto s = open("control_links.csv");
        csv::write_row(s, {"parent_id", "child_id", "equity_share"});
        char buf[16];
        for (const auto& l : output.links) {
            std::snprintf(buf, sizeof buf, "%.4f", l.equity_share);
            csv::write_row(s, {l.parent_id, l.child_id, buf});
        }
    }
    {
        auto s = open("group_heads.csv");
        csv::write_row(s, {"entity_id"});
        for (const auto& h : output.heads) csv::write_row(s, {h});
    }
    {
        auto s = open("balance_sheet.csv");
        csv::write_row(s, {"entity_id", "tier1_capital", "total_assets"});
        for (const auto& b : output.balances)
            csv::write_row(s, {b.entity_id,
                               b.tier1_capital ? format_money(*b.tier1_capital) : "",
                               b.total_assets ? format_money(*b.total_assets) : ""});
    }
    {
        auto s = open("loans.csv");
        ingest::write_loans_csv(s, output.records.loans);
    }
    {
        auto s = open("holdings.csv");
        ingest::write_holdings_csv(s, output.records.holdings);
    }
    {
        auto s = open("securities.csv");
        ingest::write_securities_csv(s, output.records.securities);
    }
    {
        auto s = open("sft.csv");
        ingest::write_sft_csv(s, output.records.sfts);
    }

    json truth;
    truth["seed"] = config.seed;
    truth["n_groups"] = config.n_groups;
    truth["as_of"] = config.as_of.str();
    truth["scale"] = config.scale;
    truth["attachment"] =
        config.attachment == Attachment::uniform ? "uniform" : "preferential";
    truth["heads"] = json::array();
    for (const auto& h : output.heads) truth["heads"].push_back(h);
    truth["partition"] = json::object();
    for (const auto& [entity, head] : output.partition) truth["partition"][entity] = head;
    truth["external_entities"] = output.external_entities;
    truth["layers"] = json::object();
    for (const auto& [name, spec] : config.layers) {
        json l;
        l["directed"] = name != net::LayerName::ovrl_portfl;
        l["target_density"] = spec.density;
        l["edge_count"] = output.edge_counts.count(name) ? output.edge_counts.at(name) : 0;
        l["total_cents"] = output.ledger_cents.count(name) ? output.ledger_cents.at(name) : 0;
        json w;
        w["kind"] = ht::to_string(spec.weights.kind);
        w["params"] = json::object();
        for (const auto& [key, value] : spec.weights.params) w["params"][key] = value;
        w["x_min"] = spec.weights.x_min;
        l["weights"] = std::move(w);
        truth["layers"][net::to_string(name)] = std::move(l);
    }
    auto s = open("ground_truth.json");
    s << truth.dump(2) << '\n';
}

}  // namespace netstrata::syn
