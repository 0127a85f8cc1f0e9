#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspplan/asp_syntax.hpp"
#include "aspplan/formula.hpp"

namespace aspplan {

using State = std::set<Atom>;

/// Skeleton element `element` (0-based, flattened) was completed by the
/// action at `time`; fluent elements record the time they were checked.
struct Binding {
    std::size_t element = 0;
    int time = 0;
    Atom action;  // empty name for fluent elements

    bool operator==(const Binding&) const = default;
};

/// ⟨s0, a0, s1, …, a(n−1), sn⟩ with 0-based time internally.
struct Trajectory {
    std::vector<State> states;
    std::vector<Atom> actions;  // actions[t] is executed between states[t] and states[t+1]
    std::vector<Binding> bindings;

    int horizon() const { return static_cast<int>(actions.size()); }

    /// Ordering and equality on states and actions only.
    bool same_path(const Trajectory& o) const { return states == o.states && actions == o.actions; }
    bool precedes(const Trajectory& o) const {
        if (actions != o.actions) return actions < o.actions;
        return states < o.states;
    }
};

/// "occurs(1, walk(2), 1)" per line, with 1-based times.
std::string plan_text(const std::vector<Atom>& actions);

/// Reads plan text back into action atoms ordered by time. Throws ParseError.
std::vector<Atom> parse_plan_text(std::string_view text);

/// occurs(C, verb(objects...), t) for the action atom verb(C, objects...).
std::string occurs_text(const Atom& action, int time);

/// Inverse of occurs_text on a parsed term; `time` receives t.
Atom action_from_occurs(const AspTerm& occurs, int& time);

/// Ground ASP term (constants and integers only) to an atom.
Atom atom_from_term(const AspTerm& t);

}  // namespace aspplan
