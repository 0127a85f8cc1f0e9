#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/ground_theory.hpp"
#include "aspplan/skeleton_plan.hpp"
#include "aspplan/text.hpp"
#include "aspplan/trajectory.hpp"

namespace aspplan {

struct TransitionResult {
    std::vector<State> successors;  // sorted; usually one
    std::string reason;             // why there is none

    bool applicable() const { return !successors.empty(); }
};

/// Successor computation for a ground theory, matching the answer sets of the
/// compiled step block: effects of dynamic laws and static laws are closed
/// under least fixpoint; an inertial fluent persists unless its complement
/// holds in the successor; constraints and complement pairs filter the result.
class TransitionSystem {
public:
    explicit TransitionSystem(const GroundCausalTheory& gt);
    ~TransitionSystem();
    TransitionSystem(TransitionSystem&&) noexcept;

    const GroundCausalTheory& theory() const;

    /// Observed fluents closed under static laws; nullopt when a constraint
    /// rejects it, with the violated law in `reason`.
    std::optional<State> initial_state(std::string* reason = nullptr) const;

    TransitionResult step(const State& s, const Atom& action) const;

    /// Violated constraint or complement pair in `s`, if any.
    std::optional<std::string> violation(const State& s) const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

TransitionResult transition(const GroundCausalTheory& gt, const State& s, const Atom& action);

struct PlannerOptions {
    int max_horizon = 40;
    std::size_t node_budget = 1'000'000;
    bool prune = true;  // restrict actions to the skeleton's related actions
};

enum class SolveStatus { found, none, unknown };

std::string_view to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::none;
    std::optional<Trajectory> trajectory;
    std::size_t expanded = 0;
    std::string reason;
};

/// Shortest trajectory that starts in the observed state, takes one legal
/// action per step and satisfies the skeleton. `none` means no horizon up to
/// max_horizon admits one; `unknown` means the node budget ran out first.
SolveResult solve(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, const PlannerOptions& opts = {});

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Every solution with exactly `horizon` steps, ordered by actions then
/// states. Throws BudgetExceeded.
std::vector<Trajectory> solve_all(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, int horizon,
                                  const PlannerOptions& opts = {});

/// Trajectory from explicit actions: replays `actions` from the initial
/// state, taking the first successor each step. nullopt when a step is
/// inapplicable; `reason` names the step.
std::optional<Trajectory> replay(const TransitionSystem& ts, const std::vector<Atom>& actions,
                                 std::string* reason = nullptr);

}  // namespace aspplan
