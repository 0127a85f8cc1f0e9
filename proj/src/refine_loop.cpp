#include "aspplan/refine_loop.hpp"

#include <nlohmann/json.hpp>

#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

std::vector<VerbSpec> verb_specs(const Signature& sig) {
    std::vector<VerbSpec> out;
    for (const auto& a : sig.actions) out.push_back({a.name, a.arity() - 1, a.description});
    return out;
}

VerbTable verb_table(const std::vector<VerbSpec>& verbs) {
    VerbTable t;
    for (const auto& v : verbs) t[v.verb] = v.arity;
    return t;
}

namespace {

std::string verb_line(const VerbSpec& v) {
    std::string out = "- [" + v.verb + "]";
    for (std::size_t i = 1; i <= v.arity; ++i) out += " <arg" + std::to_string(i) + ">";
    if (!v.description.empty()) out += ": " + v.description;
    return out;
}

const char* const kJsonDemand =
    "Your response should be formatted as a JSON object that can be parsed by a standard JSON parser.";

}  // namespace

std::string build_prompt(const PromptContext& ctx, const std::string* previous, const VerifierReport* errors) {
    std::string p = "SYSTEM:\n";
    p += "You serve as an AI task planner.\n";
    p += "1. Turn the goal into a sequence of actions. Write each action as \"[verb] <target1> <target2>\"; "
         "the targets are optional and depend on the verb. Only these verbs are allowed:\n";
    for (const auto& v : ctx.verbs) p += verb_line(v) + "\n";
    p += "2. Arguments must come from these values:\n";
    if (!ctx.scenes.empty()) p += "Permissible Scenes: " + join(ctx.scenes, ", ") + "\n";
    p += "Permissible Objects: " + join(ctx.categories, ", ") + "\n";
    p += "3. Start with a short description of the plan, then list every action. Use this shape:\n"
         "{\n  \"thoughts\": \"step-by-step description of the plan\",\n"
         "  \"actions\": [\"action1\", \"action2\", \"action3\"]\n}\n";
    if (!ctx.example.empty()) p += "4. Example plan for another goal:\n" + ctx.example + "\n";
    p += "\nUSER:\nThe goal is to \"" + ctx.task + "\". Begin your plan. " + kJsonDemand + "\n";
    if (previous && errors) {
        p += "\nASSISTANT:\n" + *previous + "\n";
        p += "\nUSER:\nRevise your plan. Your plan above failed.\nBecause: " + errors->text() + "\n" +
             kJsonDemand + "\n";
    }
    return p;
}

std::string LoopTrace::to_json() const {
    json its = json::array();
    for (const auto& it : iterations) {
        json errs = json::array();
        for (const auto& e : it.report.errors) errs.push_back({{"line", e.line}, {"code", e.code}, {"message", e.message}});
        its.push_back({{"prompt_digest", it.prompt_digest},
                       {"response", it.response},
                       {"valid", it.report.valid()},
                       {"errors", errs}});
    }
    json subs = json::array();
    for (const auto& s : substitutions) subs.push_back({{"from", s.from}, {"to", s.to}, {"similarity", s.similarity}});
    return json{{"iterations", its}, {"revisions", revisions}, {"substitutions", subs}, {"valid", valid}}.dump(2) +
           "\n";
}

LoopResult run_refine(const PromptContext& ctx, GenerationClient& client, const Embedder& emb, int k_max,
                      const GroundingIndex* index) {
    if (k_max < 1) throw Error("k_max must be at least 1");
    const VerbTable verbs = verb_table(ctx.verbs);
    LoopResult out;

    std::string prompt = build_prompt(ctx);
    std::optional<ParsedResponse> usable;  // last response that parsed as JSON
    for (int k = 0;; ++k) {
        IterationRecord rec;
        rec.prompt_digest = hex_digest(prompt);
        rec.response = client.generate(prompt);
        ParsedResponse parsed = parse_llm_response(rec.response);
        rec.report = verify_response(parsed, verbs, ctx.categories);
        const bool json_ok = parsed.report.errors.empty() || parsed.report.errors.front().code != "json";
        if (json_ok) usable = std::move(parsed);
        out.trace.iterations.push_back(rec);
        if (rec.report.valid() || k == k_max) break;
        out.trace.revisions = k + 1;
        prompt = build_prompt(ctx, &rec.response, &rec.report);
    }
    if (!usable) throw Error("no response was parseable as JSON");

    std::vector<PlanLine> lines;
    for (const auto& l : usable->lines)
        if (l) lines.push_back(*l);
    out.plan = to_skeleton(lines);

    std::set<std::string> scene = ctx.categories;
    scene.insert(ctx.scenes.begin(), ctx.scenes.end());
    if (!scene.empty()) {
        GroundingIndex built;
        if (!index) {
            built = build_index(scene, emb);
            index = &built;
        }
        out.plan = ground_plan(out.plan, scene, *index, emb, &out.trace.substitutions);
    }
    out.trace.valid = out.trace.iterations.back().report.valid();
    return out;
}

}  // namespace aspplan
