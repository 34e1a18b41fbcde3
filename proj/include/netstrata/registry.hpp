#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netstrata/money.hpp"

namespace netstrata::registry {

struct Entity {
    std::string entity_id;
    std::string name;
    std::string country;  // ISO-3166 alpha-2
    bool is_credit_institution = false;
};

struct ControlLink {
    std::string parent_id;
    std::string child_id;
    double equity_share = 0.0;  // in [0, 1]
};

// Banking-group partition: every head maps to itself, every assigned entity
// maps to exactly one head.
struct GroupMap {
    std::set<std::string> head_ids;
    std::map<std::string, std::string> membership;  // entity -> head

    bool is_head(const std::string& id) const { return head_ids.count(id) != 0; }
    std::optional<std::string> head_of(const std::string& id) const {
        auto it = membership.find(id);
        if (it == membership.end()) return std::nullopt;
        return it->second;
    }
};

struct GroupProfile {
    std::string head_id;
    std::optional<Money> tier1_capital;
    std::optional<Money> total_assets;
};

struct BalanceRecord {
    std::string entity_id;
    std::optional<Money> tier1_capital;
    std::optional<Money> total_assets;
};

struct Override {
    std::string entity_id;
    std::string head_id;
};

// Resolves entities into banking groups. An entity belongs to a head's group
// when a chain of control links, each with equity share strictly above
// `control_threshold`, connects the head to it. When several heads reach the
// same entity, the head with the strongest path wins, where path strength is
// the minimum share along the chain; remaining ties go to the
// lexicographically smallest head id. Heads always map to themselves.
// `overrides` force individual assignments after control resolution.
//
// Throws on unknown ids, heads outside the entity list, and control cycles
// that pass through a head (the cycle members are listed in the message).
GroupMap resolve_groups(const std::vector<Entity>& entities,
                        const std::vector<ControlLink>& links,
                        const std::set<std::string>& heads, double control_threshold = 0.5,
                        const std::vector<Override>& overrides = {});

struct EnrichResult {
    std::map<std::string, GroupProfile> profiles;  // one entry per head
    std::size_t ignored_non_head_records = 0;
};

// Attaches consolidated balance-sheet figures to group heads. Records keyed
// by non-head entities are ignored (counted); heads without a record keep
// absent fields. Negative amounts reject the whole batch.
EnrichResult enrich_groups(const GroupMap& groups, const std::vector<BalanceRecord>& records);

// CSV loaders for the registry interchange files. Strict: any malformed row
// rejects the file with its line number.
std::vector<Entity> load_entities_csv(std::istream& in);
std::vector<ControlLink> load_control_links_csv(std::istream& in);
std::set<std::string> load_group_heads_csv(std::istream& in);
std::vector<BalanceRecord> load_balance_sheet_csv(std::istream& in);
std::vector<Override> load_overrides_csv(std::istream& in);

}  // namespace netstrata::registry
