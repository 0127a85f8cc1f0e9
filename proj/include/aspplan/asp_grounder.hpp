#pragma once

#include <optional>
#include <vector>

#include "aspplan/asp_syntax.hpp"
#include "aspplan/stable_semantics.hpp"
#include "aspplan/trajectory.hpp"

namespace aspplan {

/// Instantiates the program blocks of an emitted planning program and grounds
/// them into a normal program for the oracle:
///   base once; state(t) for t = 0..n; step(t) for t = 0..n-1; check(t) at t = n
/// with its external query(n) set true. `n` is `horizon` or, when absent,
/// the value of `#const horizon`. The 1{...}1 choice rule is expanded into an
/// even loop (one rule per element, each blocked by the others).
GroundProgram ground_asp(const AspProgram& p, std::optional<int> horizon = std::nullopt);

/// Reads occurs/3 and h/2 atoms of an answer set into a trajectory over
/// times 0..horizon.
Trajectory trajectory_from_answer_set(const AtomSet& answer_set, int horizon);

}  // namespace aspplan
