#pragma once

#include <set>
#include <string>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/asp_syntax.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/skeleton_plan.hpp"

namespace aspplan {

/// Translation of the action model. Static laws, complement exclusions and
/// state constraints go to `#program state(t)`; dynamic laws, preconditions
/// and inertia go to `#program step(t)`. Sorts that cannot be inferred from a
/// rule's positive body become `in_sort(V, sort)` guards; their names are
/// added to `guard_sorts`.
AspProgram compile_theory(const CausalTheory& t, std::set<std::string>* guard_sorts = nullptr);

/// Graph facts, `in_sort` and `action_of` facts, and `h(F, 0)` for every
/// observed fluent. State symbols that no observation reads are reported in
/// `warnings` and skipped.
AspProgram compile_initial_state(const EnvGraph& g, const CausalTheory& t,
                                 const std::set<std::string>& guard_sorts = {},
                                 std::vector<std::string>* warnings = nullptr);

/// Occurrence choice rule, related_action facts and reached(k, t) milestones
/// for the flattened skeleton elements.
AspProgram compile_skeleton(const SkeletonPlan& p, const CausalTheory& t, const EnvGraph& g);

/// `#program check(t).` requiring the last milestone at the query step.
AspProgram compile_check(std::size_t milestones);

/// All sections in order: declarations, action model, initial state,
/// skeleton, check.
AspProgram compile_program(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, int horizon,
                           std::vector<std::string>* warnings = nullptr);

/// Checks a skeleton against the signature: declared verbs with admissible
/// argument counts, declared fluents with ground arguments, acyclic subtasks.
void validate_skeleton(const SkeletonPlan& p, const Signature& sig);

}  // namespace aspplan
