#pragma once

#include <set>
#include <string>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/embedding.hpp"
#include "aspplan/grounding.hpp"
#include "aspplan/llm_client.hpp"
#include "aspplan/skeleton.hpp"

namespace aspplan {

struct VerbSpec {
    std::string verb;
    std::size_t arity = 0;  // object arguments
    std::string description;
};

/// Action schemas of a model as verb specs, in declaration order.
std::vector<VerbSpec> verb_specs(const Signature& sig);
VerbTable verb_table(const std::vector<VerbSpec>& verbs);

struct PromptContext {
    std::string task;
    std::vector<VerbSpec> verbs;
    std::set<std::string> categories;
    std::set<std::string> scenes;  // rooms; listed separately when nonempty
    std::string example;           // worked example shown in the job specification
};

/// Initial job specification followed by the goal. With `previous` and
/// `errors`, the conversation is extended by a revision request quoting the
/// verifier's messages.
std::string build_prompt(const PromptContext& ctx, const std::string* previous = nullptr,
                         const VerifierReport* errors = nullptr);

struct IterationRecord {
    std::string prompt_digest;
    std::string response;
    VerifierReport report;
};

struct LoopTrace {
    std::vector<IterationRecord> iterations;
    int revisions = 0;
    std::vector<Replacement> substitutions;
    bool valid = false;

    std::string to_json() const;
};

struct LoopResult {
    SkeletonPlan plan;
    LoopTrace trace;
};

/// Generate, verify and revise up to k_max times, then ground categories
/// outside ctx.categories ∪ ctx.scenes against `index` (built from that set
/// when null). Throws when no response ever parses as JSON.
LoopResult run_refine(const PromptContext& ctx, GenerationClient& client, const Embedder& emb, int k_max = 3,
                      const GroundingIndex* index = nullptr);

}  // namespace aspplan
