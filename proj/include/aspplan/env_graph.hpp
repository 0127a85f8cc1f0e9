#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aspplan {

using EntityId = std::int64_t;

struct Entity {
    EntityId id = 0;
    std::string category;
    std::set<std::string> states;

    bool operator==(const Entity&) const = default;
};

struct Relation {
    std::string kind;
    EntityId from = 0;
    EntityId to = 0;

    auto operator<=>(const Relation&) const = default;
};

/// A single observable fact about the scene: either (id, state) or (kind, from, to).
struct Condition {
    enum class Kind { state, relation };

    Kind kind = Kind::state;
    std::string name;  // state symbol or relation kind
    EntityId first = 0;
    EntityId second = 0;  // unused for state conditions

    static Condition state(EntityId id, std::string symbol) { return {Kind::state, std::move(symbol), id, 0}; }
    static Condition relation(std::string kind, EntityId from, EntityId to) {
        return {Kind::relation, std::move(kind), from, to};
    }

    auto operator<=>(const Condition&) const = default;
    std::string to_string() const;
};

using ConditionSet = std::set<Condition>;

/// The robot's semantic map: entities with categories and states, plus directed relations.
/// Immutable once constructed; every constructor path validates the invariants.
class EnvGraph {
public:
    EnvGraph() = default;

    /// Throws ValidationError on duplicate ids, empty categories, dangling
    /// relation endpoints or a directed cycle among relation edges.
    EnvGraph(std::vector<Entity> entities, std::vector<Relation> relations);

    const std::map<EntityId, Entity>& entities() const { return entities_; }
    const std::vector<Relation>& relations() const { return relations_; }

    const Entity* find(EntityId id) const;
    const Entity& at(EntityId id) const;
    bool contains(EntityId id) const { return entities_.count(id) != 0; }

    /// Distinct categories, sorted.
    std::set<std::string> categories() const;
    std::vector<EntityId> entities_of(std::string_view category) const;

    bool operator==(const EnvGraph&) const = default;

private:
    std::map<EntityId, Entity> entities_;
    std::vector<Relation> relations_;  // sorted, deduplicated
};

/// Parses the graph JSON format. Syntax errors are reported as ParseError
/// with line and column.
EnvGraph load_graph(std::string_view json_text);
EnvGraph load_graph_file(const std::string& path);

/// Canonical JSON: entities by id, states sorted, relations sorted.
std::string save_graph(const EnvGraph& g);

/// is/state/relation atoms (without the trailing period).
std::vector<std::string> to_facts(const EnvGraph& g);

/// Fact text: one atom per line, each terminated by ".".
std::string facts_text(const EnvGraph& g);

ConditionSet snapshot_states(const EnvGraph& g);

/// Rejects graphs where an entity carries both members of a complementary
/// state pair, e.g. on and off.
void check_state_complements(const EnvGraph& g,
                             const std::vector<std::pair<std::string, std::string>>& complements);

}  // namespace aspplan
