#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/ground_theory.hpp"
#include "aspplan/planner.hpp"
#include "aspplan/trajectory.hpp"

namespace aspplan {

struct FailedStep {
    std::size_t index = 0;  // 0-based
    Atom action;
    std::string reason;
};

struct ExecResult {
    bool executable = true;
    std::optional<FailedStep> failed_step;
    ConditionSet final_state;  // after the last applied step
    State final_fluents;
};

/// Graph conditions after reaching fluent state `s`: the scene snapshot with
/// every condition that an observation maps one-to-one onto a fluent set to
/// that fluent's truth value.
ConditionSet conditions_of(const CausalTheory& t, const EnvGraph& g, const GroundCausalTheory& gt, const State& s);

/// Applies the actions from the scene's initial state until one is inapplicable.
/// Throws Error when an action mentions an id that is not in the scene.
ExecResult execute(const EnvGraph& g, const CausalTheory& t, const std::vector<Atom>& actions);
ExecResult execute(const EnvGraph& g, const CausalTheory& t, const Trajectory& tr);

struct GoalSpec {
    std::string task;
    ConditionSet s_initial;
    ConditionSet s_gt;
};

/// {"task": ..., "add": [conditions], "remove": [conditions]} applied to the
/// scene snapshot. A condition is {"id": 7, "state": "clean"} or
/// {"relation": "inside", "from": 3, "to": 4}.
GoalSpec load_goal_spec(std::string_view json_text, const EnvGraph& g);
GoalSpec load_goal_spec_file(const std::string& path, const EnvGraph& g);

/// 1 − |(s_gt − s_initial) − (s_final − s_initial)| / |s_gt − s_initial|,
/// and 1 when nothing needs to change. `states_only` ignores relations.
double gar(const ConditionSet& s_initial, const ConditionSet& s_gt, const ConditionSet& s_final,
           bool states_only = false);

struct BatchTask {
    std::string name;
    std::string scene;
    std::string model;
    std::string skeleton;  // skeleton JSON, solved with the planner
    std::string plan;      // or: a plan text file executed as given
    std::string goal;
};

/// {"tasks": [{"name", "scene", "model", "skeleton" | "plan", "goal"}]};
/// relative paths are resolved against the manifest's directory.
std::vector<BatchTask> load_manifest(const std::string& path);

struct BatchRow {
    std::string task;
    bool executable = false;
    double gar = 0;
    int steps = 0;
    std::string error;  // nonempty when the row could not be evaluated
};

struct BatchReport {
    std::vector<BatchRow> rows;
    std::optional<double> exec_rate;  // fraction in [0, 1]; empty for no rows
    std::optional<double> mean_gar;

    std::string csv() const;
    std::string table() const;
};

BatchReport evaluate_batch(const std::vector<BatchTask>& tasks, const PlannerOptions& opts = {},
                           bool states_only = false);

}  // namespace aspplan
