#include "aspplan/env_graph.hpp"

#include <algorithm>
#include <functional>

#include "aspplan/text.hpp"
#include "json.hpp"

namespace aspplan {

using nlohmann::json;

std::string Condition::to_string() const {
    if (kind == Kind::state) return "(" + std::to_string(first) + ", " + name + ")";
    return "(" + name + ", " + std::to_string(first) + ", " + std::to_string(second) + ")";
}

EnvGraph::EnvGraph(std::vector<Entity> entities, std::vector<Relation> relations) {
    for (auto& e : entities) {
        if (e.id <= 0) throw ValidationError("entity id must be positive: " + std::to_string(e.id));
        if (e.category.empty()) throw ValidationError("entity " + std::to_string(e.id) + " has an empty category");
        const EntityId id = e.id;
        if (!entities_.emplace(id, std::move(e)).second)
            throw ValidationError("duplicate entity id " + std::to_string(id));
    }
    for (const auto& r : relations) {
        if (r.kind.empty()) throw ValidationError("relation with empty kind");
        if (!contains(r.from))
            throw ValidationError("relation " + r.kind + " references unknown entity " + std::to_string(r.from));
        if (!contains(r.to))
            throw ValidationError("relation " + r.kind + " references unknown entity " + std::to_string(r.to));
    }
    relations_ = std::move(relations);
    std::sort(relations_.begin(), relations_.end());
    relations_.erase(std::unique(relations_.begin(), relations_.end()), relations_.end());

    // Directed cycle check over all edges regardless of kind.
    std::map<EntityId, std::vector<EntityId>> succ;
    for (const auto& r : relations_) succ[r.from].push_back(r.to);
    std::map<EntityId, int> color;  // 0 white, 1 on stack, 2 done
    std::function<void(EntityId)> visit = [&](EntityId v) {
        color[v] = 1;
        for (EntityId w : succ[v]) {
            if (color[w] == 1)
                throw ValidationError("cycle detected in relations through entities " + std::to_string(v) + " and " +
                                      std::to_string(w));
            if (color[w] == 0) visit(w);
        }
        color[v] = 2;
    };
    for (const auto& [id, _] : entities_)
        if (color[id] == 0) visit(id);
}

const Entity* EnvGraph::find(EntityId id) const {
    auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

const Entity& EnvGraph::at(EntityId id) const {
    if (const Entity* e = find(id)) return *e;
    throw ValidationError("unknown entity id " + std::to_string(id));
}

std::set<std::string> EnvGraph::categories() const {
    std::set<std::string> out;
    for (const auto& [_, e] : entities_) out.insert(e.category);
    return out;
}

std::vector<EntityId> EnvGraph::entities_of(std::string_view category) const {
    std::vector<EntityId> out;
    for (const auto& [id, e] : entities_)
        if (e.category == category) out.push_back(id);
    return out;
}

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <typename T>
T require(const json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key)) throw ValidationError(std::string(where) + " is missing \"" + key + "\"");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string(where) + " has a malformed \"" + key + "\"");
    }
}

}  // namespace

EnvGraph load_graph(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending token, 1-based.
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = line_column(json_text, at);
        throw ParseError("graph JSON parse error: " + std::string(e.what()), line, col);
    }
    if (!doc.is_object()) throw ValidationError("graph JSON must be an object");

    std::vector<Entity> entities;
    for (const auto& item : require<json>(doc, "entities", "graph")) {
        Entity e;
        e.id = require<EntityId>(item, "id", "entity");
        e.category = require<std::string>(item, "category", "entity");
        if (item.contains("states")) {
            for (const auto& s : require<std::vector<std::string>>(item, "states", "entity")) e.states.insert(s);
        }
        entities.push_back(std::move(e));
    }
    std::vector<Relation> relations;
    if (doc.contains("relations")) {
        for (const auto& item : require<json>(doc, "relations", "graph")) {
            relations.push_back({require<std::string>(item, "kind", "relation"), require<EntityId>(item, "from", "relation"),
                                 require<EntityId>(item, "to", "relation")});
        }
    }
    return EnvGraph(std::move(entities), std::move(relations));
}

EnvGraph load_graph_file(const std::string& path) { return load_graph(read_file(path)); }

std::string save_graph(const EnvGraph& g) {
    json doc;
    doc["entities"] = json::array();
    for (const auto& [id, e] : g.entities()) {
        doc["entities"].push_back({{"id", id}, {"category", e.category}, {"states", e.states}});
    }
    doc["relations"] = json::array();
    for (const auto& r : g.relations()) doc["relations"].push_back({{"kind", r.kind}, {"from", r.from}, {"to", r.to}});
    return doc.dump(2) + "\n";
}

std::vector<std::string> to_facts(const EnvGraph& g) {
    std::vector<std::string> out;
    for (const auto& [id, e] : g.entities()) out.push_back("is(" + std::to_string(id) + ", " + e.category + ")");
    for (const auto& [id, e] : g.entities())
        for (const auto& s : e.states) out.push_back("state(" + std::to_string(id) + ", " + s + ")");
    for (const auto& r : g.relations())
        out.push_back("relation(" + r.kind + ", " + std::to_string(r.from) + ", " + std::to_string(r.to) + ")");
    return out;
}

std::string facts_text(const EnvGraph& g) {
    std::string out;
    for (const auto& f : to_facts(g)) out += f + ".\n";
    return out;
}

ConditionSet snapshot_states(const EnvGraph& g) {
    ConditionSet out;
    for (const auto& [id, e] : g.entities())
        for (const auto& s : e.states) out.insert(Condition::state(id, s));
    for (const auto& r : g.relations()) out.insert(Condition::relation(r.kind, r.from, r.to));
    return out;
}

void check_state_complements(const EnvGraph& g,
                             const std::vector<std::pair<std::string, std::string>>& complements) {
    for (const auto& [id, e] : g.entities()) {
        for (const auto& [a, b] : complements) {
            if (e.states.count(a) && e.states.count(b))
                throw ValidationError("entity " + std::to_string(id) + " has complementary states " + a + " and " + b);
        }
    }
}

}  // namespace aspplan
