#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspplan/env_graph.hpp"
#include "aspplan/formula.hpp"
#include "aspplan/skeleton_plan.hpp"

namespace aspplan {

/// A sort is a set of entity categories, or every entity ("any").
struct Sort {
    bool any = false;
    std::set<std::string> categories;

    bool admits(std::string_view category) const { return any || categories.count(std::string(category)) != 0; }
    Sort intersect(const Sort& other) const;
    bool operator==(const Sort&) const = default;
};

/// Fluent or action schema. For actions the first argument is the agent.
struct Schema {
    std::string name;
    std::vector<std::string> sorts;
    std::string description;  // actions only; shown to the language model

    std::size_t arity() const { return sorts.size(); }
};

/// Two fluents that can never hold together; the second one cancels the
/// inertia of the first and vice versa. Arguments are shared variables.
struct ComplementPair {
    Atom first;
    Atom second;
};

/// Maps observed graph facts to initial fluents:
/// `initially dirty(O) if state(O, dirty).`
struct Observation {
    Atom fluent;
    std::vector<Atom> graph_body;  // is/state/relation atoms
    int line = 0;
};

struct Signature {
    std::map<std::string, std::vector<std::string>> sort_decls;  // declared unions
    std::vector<Schema> fluents;
    std::vector<Schema> actions;
    std::map<std::string, SkeletonPlan> subtasks;
    std::vector<ComplementPair> complements;
    std::set<std::string> support_verbs;

    const Schema* fluent(std::string_view name) const;
    const Schema* action(std::string_view name) const;
    bool is_subtask(std::string_view name) const { return subtasks.count(std::string(name)) != 0; }

    /// Resolves a sort name: a declared union, "any", or a bare category.
    Sort sort(std::string_view name) const;

    /// Complement of a fluent name, if declared.
    std::optional<std::string> complement_of(std::string_view fluent) const;
};

struct CausalRule {
    enum class Kind { dynamic, static_law, inertial, nonexecutable, constraint };

    Kind kind = Kind::static_law;
    Formula head;        // fluent atom; falsity for constraint/nonexecutable
    Formula if_part;     // evaluated at the caused time step
    Formula after_part;  // dynamic: evaluated one step earlier; nonexecutable: action atom & condition
    int line = 0;

    std::string to_string() const;  // DSL statement, without trailing "."
};

std::string_view to_string(CausalRule::Kind k);

/// An action model: signature plus classified causal rules. Immutable after parsing.
struct CausalTheory {
    Signature signature;
    std::vector<CausalRule> rules;
    std::vector<Observation> observations;

    /// Nonexecutable rules have the action atom first in `after_part`;
    /// dynamic rules have at most one action atom there. This splits it.
    struct ActionCondition {
        std::optional<Atom> action;
        std::vector<Literal> fluents;
    };
    ActionCondition split_after(const CausalRule& r) const;

    /// State-symbol complements implied by observations and fluent
    /// complements, e.g. (on, off).
    std::vector<std::pair<std::string, std::string>> state_complements() const;

    /// Action verbs with their object arity (agent excluded).
    std::map<std::string, std::size_t> verb_arities() const;
};

/// Parses the action-model DSL. Throws ParseError or ValidationError.
CausalTheory parse_action_model(std::string_view text);
CausalTheory load_action_model(const std::string& path);

/// DSL text that parses back to an identical theory.
std::string print_action_model(const CausalTheory& t);

/// Parses a fluent formula ("dirty(7) & not on(5)") with the DSL lexer.
Formula parse_formula(std::string_view text);

/// Parses skeleton items in the DSL form used by subtask declarations:
/// "find(detergent); holds(clean(7)); prepare".
SkeletonPlan parse_skeleton_items(std::string_view text);

}  // namespace aspplan
