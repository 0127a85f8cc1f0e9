#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/skeleton_plan.hpp"
#include "aspplan/trajectory.hpp"

namespace aspplan {

/// One "[verb] <target1> <target2>" line.
struct PlanLine {
    std::string verb;
    std::vector<std::string> targets;
    std::string raw;

    std::string to_string() const;
    bool operator==(const PlanLine&) const = default;
};

struct VerifierError {
    std::size_t line = 0;  // 0-based index into the action list
    std::string code;      // json | format | unknown_verb | arity
    std::string message;
};

struct VerifierReport {
    std::vector<VerifierError> errors;

    bool valid() const { return errors.empty(); }
    /// Messages joined by newlines; embedded verbatim in revision prompts.
    std::string text() const;
};

/// Verb → number of object arguments (agent excluded).
using VerbTable = std::map<std::string, std::size_t>;

struct ParsedResponse {
    std::vector<std::optional<PlanLine>> lines;  // nullopt where a line was unparseable
    VerifierReport report;                       // json/format problems found while parsing
};

/// First balanced JSON object in `text` that parses, if any.
std::optional<std::string> extract_json_object(std::string_view text);

/// Reads the "actions" array of a model response. Never throws; problems
/// become report entries.
ParsedResponse parse_llm_response(std::string_view text);

/// Parses a single "[verb] <a> <b>" line.
std::optional<PlanLine> parse_plan_line(std::string_view line);

/// Flags unknown verbs and argument-count violations. Categories are not
/// checked here; referring-grounding handles them.
VerifierReport grammar_verify(const std::vector<PlanLine>& lines, const VerbTable& verbs,
                              const std::set<std::string>& categories);

/// parse_llm_response followed by grammar_verify on the parseable lines.
VerifierReport verify_response(const ParsedResponse& parsed, const VerbTable& verbs,
                               const std::set<std::string>& categories);

/// Sequence of action steps in line order. Throws ValidationError on a
/// malformed line.
SkeletonPlan to_skeleton(const std::vector<PlanLine>& lines);

/// Plan lines of a flat action-step skeleton.
std::vector<PlanLine> to_plan_lines(const SkeletonPlan& p);

/// {"actions": [...]} with a "thoughts" field when nonempty.
std::string skeleton_json(const SkeletonPlan& p, std::string_view thoughts = {});
SkeletonPlan load_skeleton_json(std::string_view text);
SkeletonPlan load_skeleton_file(const std::string& path);

/// Split indices n^1 ≤ … ≤ n^m = n for the flattened skeleton elements, plus
/// the action (or check time) each element was matched at.
struct SatisfactionWitness {
    std::vector<int> splits;
    std::vector<Binding> bindings;
};

/// Whether `tr` satisfies `p`: an action element holds on a segment whose
/// first action matches it; a fluent element holds when the segment's first
/// state satisfies it; subtasks expand; sequences split the trajectory into
/// consecutive segments. Returns the witness when satisfied.
std::optional<SatisfactionWitness> satisfies_witness(const Trajectory& tr, const SkeletonPlan& p,
                                                     const Signature& sig, const EnvGraph& g);

bool satisfies(const Trajectory& tr, const SkeletonPlan& p, const Signature& sig, const EnvGraph& g);

/// Does `action` (verb(agent, objects...)) match the skeleton step? Each
/// given argument must equal the object id or name its category; omitted
/// arguments match anything.
bool step_matches(const SkeletonPlan& step, const Atom& action, const EnvGraph& g);

}  // namespace aspplan
