#pragma once

#include <string>
#include <vector>

#include "aspplan/formula.hpp"

namespace aspplan {

/// A skeleton plan: an action step, a fluent specification, a subtask
/// reference, or a sequence of skeleton plans.
struct SkeletonPlan {
    enum class Kind { action, fluent, subtask, sequence };

    Kind kind = Kind::sequence;
    std::string name;          // verb (action) or subtask name
    std::vector<Term> args;    // action arguments: category symbols or entity ids
    Formula spec;              // fluent specification
    std::vector<SkeletonPlan> steps;  // sequence members

    static SkeletonPlan action(std::string verb, std::vector<Term> args = {}) {
        SkeletonPlan p;
        p.kind = Kind::action;
        p.name = std::move(verb);
        p.args = std::move(args);
        return p;
    }
    static SkeletonPlan fluent(Formula f) {
        SkeletonPlan p;
        p.kind = Kind::fluent;
        p.spec = std::move(f);
        return p;
    }
    static SkeletonPlan subtask(std::string name) {
        SkeletonPlan p;
        p.kind = Kind::subtask;
        p.name = std::move(name);
        return p;
    }
    static SkeletonPlan sequence(std::vector<SkeletonPlan> steps = {}) {
        SkeletonPlan p;
        p.kind = Kind::sequence;
        p.steps = std::move(steps);
        return p;
    }

    bool empty() const { return kind == Kind::sequence && steps.empty(); }

    /// DSL form, e.g. "find(detergent); holds(clean(7)); prepare".
    std::string to_string() const;

    bool operator==(const SkeletonPlan&) const = default;
};

}  // namespace aspplan
