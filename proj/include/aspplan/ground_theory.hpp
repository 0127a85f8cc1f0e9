#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/skeleton_plan.hpp"

namespace aspplan {

/// One ground instance of a causal law, time-independent. Time stamps are
/// attached by causal_rules().
struct GroundLaw {
    CausalRule::Kind kind = CausalRule::Kind::static_law;
    std::optional<Atom> head;            // fluent caused (dynamic, static, inertial)
    std::optional<Atom> action;          // dynamic, nonexecutable
    std::vector<Literal> body;           // fluents at the caused step (if part / constraint body)
    std::vector<Literal> after;          // fluents one step earlier (dynamic) or at the action step (nonexecutable)
    std::optional<Atom> complement;      // inertial: the complement fluent instance, when declared
    const CausalRule* source = nullptr;  // rule this instance came from

    std::string to_string() const;
};

struct GroundCausalTheory {
    std::vector<Atom> fluents;  // every ground fluent atom, sorted
    std::vector<Atom> actions;  // ground action atoms admitted by the action filter, sorted
    std::vector<GroundLaw> laws;
    std::vector<std::pair<Atom, Atom>> complements;
    std::vector<Atom> initial;  // fluents observed at time 0, sorted
    int horizon = 1;
    std::vector<std::string> warnings;

    std::vector<const GroundLaw*> of_kind(CausalRule::Kind k) const;
};

/// Restricts which ground action atoms are instantiated; null admits all.
using ActionFilter = std::function<bool(const Atom&)>;

/// Grounds every rule over the entities of `g` whose category matches the
/// sort of each variable. Rules whose shape is not supported throw
/// ValidationError ("unsupported formula shape").
GroundCausalTheory ground_theory(const CausalTheory& t, const EnvGraph& g, int horizon,
                                 const ActionFilter& filter = nullptr);

/// Entities a skeleton talks about: every entity whose category or id is an
/// argument of an action step, ids inside fluent specs, subtasks expanded,
/// plus all of their relation ancestors.
std::set<EntityId> skeleton_entities(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p);

/// The related_action relation: verbs of the skeleton plus support verbs,
/// with every object argument among skeleton_entities. A skeleton that names
/// no entity relates every action.
ActionFilter related_actions(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p);

/// Flattens subtasks and nested sequences into the list of primitive
/// elements (action steps and fluent specs).
std::vector<SkeletonPlan> flatten_skeleton(const SkeletonPlan& p, const Signature& sig);

// ---------------------------------------------------------------------------
// Time-stamped causal theory.

struct TimedAtom {
    Atom atom;
    int time = 0;
    bool is_action = false;

    std::string to_string() const;  // "clean(7)_1"
    auto operator<=>(const TimedAtom&) const = default;
};

struct TimedLiteral {
    TimedAtom atom;
    bool positive = true;

    std::string to_string() const;
    auto operator<=>(const TimedLiteral&) const = default;
};

/// body ⇒ head; an absent head is ⊥.
struct TimedCausalRule {
    std::vector<TimedLiteral> body;
    std::optional<TimedLiteral> head;

    std::string to_string() const;  // "wash(1, 7)_0 ⇒ clean(7)_1"
};

/// The causal laws of `gt` instantiated for every applicable time step.
std::vector<TimedCausalRule> causal_rules(const GroundCausalTheory& gt);

/// causal_rules plus the frame that makes causal models coincide with
/// trajectories: initial facts, closed-world default for fluents, exogenous
/// actions, exactly one action per step, complement exclusion.
std::vector<TimedCausalRule> trajectory_theory(const GroundCausalTheory& gt);

/// Atom universe of a trajectory theory: fluents at 0..n, actions at 0..n-1.
std::vector<TimedAtom> trajectory_atoms(const GroundCausalTheory& gt);

}  // namespace aspplan
