#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "aspplan/asp_compiler.hpp"
#include "aspplan/grounding.hpp"
#include "aspplan/metrics.hpp"
#include "aspplan/planner.hpp"
#include "aspplan/refine_loop.hpp"
#include "aspplan/skeleton.hpp"
#include "aspplan/text.hpp"

namespace aspplan::cli {

namespace {

namespace fs = std::filesystem;

// Bad input or configuration; maps to exit code 2.
struct InputError : Error {
    using Error::Error;
};

const std::string& need(const std::string& value, const char* flag) {
    if (value.empty()) throw InputError(std::string("missing required option ") + flag);
    return value;
}

void emit(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty()) out << text;
    else write_file(path, text);
}

CausalTheory model_of(const RunConfig& c) { return load_action_model(need(c.model, "--model")); }
EnvGraph scene_of(const RunConfig& c) { return load_graph_file(need(c.scene, "--scene")); }

/// JSON plan lines, or skeleton DSL items for any other extension.
SkeletonPlan skeleton_of(const std::string& path) {
    if (fs::path(path).extension() == ".json") return load_skeleton_file(path);
    return parse_skeleton_items(read_file(path));
}

std::unique_ptr<Embedder> embedder_of(const RunConfig& c) {
    if (c.embedder == "bundled") return std::make_unique<TrigramEmbedder>();
    if (c.embedder == "remote") return std::make_unique<RemoteEmbedder>(c.embedding);
    throw InputError("unknown embedder '" + c.embedder + "' (bundled | remote)");
}

std::unique_ptr<GenerationClient> client_of(const RunConfig& c) {
    if (c.client == "stub") return load_scripted_client(need(c.fixture, "--fixture"));
    if (c.client == "remote") return std::make_unique<HttpChatClient>(c.chat);
    throw InputError("unknown client '" + c.client + "' (stub | remote)");
}

PromptContext prompt_context(const RunConfig& c, const CausalTheory& t, const EnvGraph& g) {
    PromptContext ctx;
    ctx.task = need(c.task, "--task");
    ctx.verbs = verb_specs(t.signature);
    const bool has_rooms = t.signature.sort_decls.count("room") != 0;
    const Sort rooms = t.signature.sort("room");
    for (const auto& cat : g.categories()) {
        if (cat == "character") continue;
        if (has_rooms && rooms.admits(cat)) ctx.scenes.insert(cat);
        else ctx.categories.insert(cat);
    }
    if (!c.example.empty()) ctx.example = trim(read_file(c.example));
    return ctx;
}

std::string witness_text(const SatisfactionWitness& w) {
    return join(w.bindings, ", ", [](const Binding& b) {
        return "element " + std::to_string(b.element + 1) + " at step " + std::to_string(b.time + 1);
    });
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CausalTheory t = model_of(cfg);
        const EnvGraph g = scene_of(cfg);
        const SkeletonPlan p = cfg.skeleton.empty() ? SkeletonPlan::sequence() : skeleton_of(cfg.skeleton);
        validate_skeleton(p, t.signature);
        int horizon = cfg.horizon;
        if (horizon <= 0) {
            PlannerOptions opts{cfg.max_horizon, cfg.node_budget, cfg.prune};
            const SolveResult r = solve(t, g, p, opts);
            horizon = r.trajectory ? std::max(1, r.trajectory->horizon()) : cfg.max_horizon;
            if (cfg.verbose) err << "horizon " << horizon << " (planner: " << to_string(r.status) << ")\n";
        }
        std::vector<std::string> warnings;
        const std::string text = emit_text(compile_program(t, g, p, horizon, &warnings));
        for (const auto& w : warnings) err << "warning: " << w << "\n";
        emit(cfg.output, out, text);
        return 0;
    });
}

int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.node_budget == 0) throw InputError("--budget must be positive");
        const CausalTheory t = model_of(cfg);
        const EnvGraph g = scene_of(cfg);
        const SkeletonPlan p = skeleton_of(need(cfg.skeleton, "--skeleton"));
        validate_skeleton(p, t.signature);
        const SolveResult r = solve(t, g, p, {cfg.max_horizon, cfg.node_budget, cfg.prune});
        if (cfg.verbose) err << "status " << to_string(r.status) << ", " << r.expanded << " expansions\n";
        if (r.status == SolveStatus::unknown) {
            err << "unknown: " << r.reason << "\n";
            return 3;
        }
        if (r.status == SolveStatus::none) {
            err << "no plan: " << r.reason << "\n";
            return 1;
        }
        emit(cfg.output, out, plan_text(r.trajectory->actions));
        return 0;
    });
}

int cmd_skeleton(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.k_max < 1) throw InputError("--k-max must be at least 1");
        const CausalTheory t = model_of(cfg);
        const EnvGraph g = scene_of(cfg);
        const PromptContext ctx = prompt_context(cfg, t, g);
        auto client = client_of(cfg);
        auto emb = embedder_of(cfg);
        std::optional<GroundingIndex> index;
        if (!cfg.index.empty() && fs::exists(cfg.index)) index = load_index(read_file(cfg.index));
        const LoopResult r = run_refine(ctx, *client, *emb, cfg.k_max, index ? &*index : nullptr);
        emit(cfg.output, out, skeleton_json(r.plan, ctx.task));
        if (!cfg.trace.empty()) write_file(cfg.trace, r.trace.to_json());
        for (const auto& s : r.trace.substitutions)
            err << "grounded " << s.from << " -> " << s.to << " (" << s.similarity << ")\n";
        if (!r.trace.valid) {
            err << "skeleton is still invalid after " << r.trace.revisions << " revisions:\n"
                << r.trace.iterations.back().report.text() << "\n";
            return 1;
        }
        return 0;
    });
}

int cmd_ground(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const EnvGraph g = scene_of(cfg);
        const SkeletonPlan p = skeleton_of(need(cfg.skeleton, "--skeleton"));
        auto emb = embedder_of(cfg);
        const std::set<std::string> cats = g.categories();
        GroundingIndex idx;
        if (!cfg.index.empty() && fs::exists(cfg.index)) {
            idx = load_index(read_file(cfg.index));
        } else {
            idx = build_index(cats, *emb);
            if (!cfg.index.empty()) write_file(cfg.index, save_index(idx));
        }
        std::vector<Replacement> subs;
        const SkeletonPlan grounded = ground_plan(p, cats, idx, *emb, &subs);
        for (const auto& s : subs) err << "grounded " << s.from << " -> " << s.to << " (" << s.similarity << ")\n";
        emit(cfg.output, out, skeleton_json(grounded));
        return 0;
    });
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<BatchTask> tasks;
        try {
            tasks = load_manifest(need(cfg.manifest, "--manifest"));
        } catch (const Error& e) {
            throw InputError(e.what());
        }
        const BatchReport rep = evaluate_batch(tasks, {cfg.max_horizon, cfg.node_budget, cfg.prune}, cfg.states_only);
        if (!cfg.csv.empty()) write_file(cfg.csv, rep.csv());
        emit(cfg.output, out, rep.table());
        return 0;
    });
}

int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const fs::path data = cfg.data_dir.empty() ? fs::path(ASPPLAN_DATA_DIR) : fs::path(cfg.data_dir);
        RunConfig c = cfg;
        auto fill = [&](std::string& field, const char* rel) {
            if (field.empty()) field = (data / rel).string();
        };
        fill(c.model, "household.cp");
        fill(c.scene, "scenes/demo_home.json");
        fill(c.goal, "goals/demo_wash.json");
        fill(c.fixture, "fixtures/wash_clothes_responses.json");
        fill(c.example, "prompt_example.json");
        if (c.task.empty()) c.task = "wash clothes";
        c.client = "stub";
        c.embedder = "bundled";

        const CausalTheory t = model_of(c);
        const EnvGraph g = scene_of(c);
        const PromptContext ctx = prompt_context(c, t, g);
        auto client = client_of(c);
        TrigramEmbedder emb;
        const LoopResult lr = run_refine(ctx, *client, emb, c.k_max);
        out << "skeleton (" << lr.trace.revisions << " revisions, valid=" << (lr.trace.valid ? "true" : "false")
            << "):\n";
        for (const auto& l : to_plan_lines(lr.plan)) out << "  " << l.to_string() << "\n";
        for (const auto& s : lr.trace.substitutions)
            out << "grounded " << s.from << " -> " << s.to << " (similarity " << s.similarity << ")\n";
        if (!lr.trace.valid) return 1;

        const SolveResult r = solve(t, g, lr.plan, {c.max_horizon, c.node_budget, c.prune});
        if (r.status == SolveStatus::unknown) {
            err << "unknown: " << r.reason << "\n";
            return 3;
        }
        if (r.status == SolveStatus::none) {
            err << "no plan: " << r.reason << "\n";
            return 1;
        }
        const Trajectory& tr = *r.trajectory;
        out << "plan (" << tr.horizon() << " steps):\n" << plan_text(tr.actions);
        const ExecResult ex = execute(g, t, tr);
        const GoalSpec goal = load_goal_spec_file(c.goal, g);
        const double score = gar(goal.s_initial, goal.s_gt, ex.final_state, c.states_only);
        const auto w = satisfies_witness(tr, lr.plan, t.signature, g);
        out << "executable: " << (ex.executable ? "true" : "false") << "\n";
        out << "GAR: " << score << "\n";
        out << "skeleton witness: " << (w ? witness_text(*w) : "none") << "\n";
        if (!c.output.empty()) {
            fs::create_directories(c.output);
            write_file((fs::path(c.output) / "skeleton.json").string(), skeleton_json(lr.plan, ctx.task));
            write_file((fs::path(c.output) / "trace.json").string(), lr.trace.to_json());
            write_file((fs::path(c.output) / "plan.txt").string(), plan_text(tr.actions));
            write_file((fs::path(c.output) / "demo.lp").string(),
                       emit_text(compile_program(t, g, lr.plan, std::max(1, tr.horizon()))));
        }
        return ex.executable && w ? 0 : 1;
    });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Compile action models to ASP and refine skeleton plans into executable trajectories."};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--model", c.model, "action model (.cp)");
    app.add_option("--scene", c.scene, "environment graph (JSON)");
    app.add_option("--skeleton", c.skeleton, "skeleton plan (JSON lines or DSL items)");
    app.add_option("--goal", c.goal, "goal spec (JSON)");
    app.add_option("-o,--out", c.output, "output file (demo: output directory)");
    app.add_option("--data-dir", c.data_dir, "bundled assets for demo");
    app.add_option("--horizon", c.horizon, "compile horizon; 0 uses the planner's shortest")->check(CLI::NonNegativeNumber);
    app.add_option("--max-horizon", c.max_horizon, "planner horizon limit")->check(CLI::PositiveNumber);
    app.add_option("--budget", c.node_budget, "planner node budget");
    app.add_flag("!--no-prune", c.prune, "search all actions instead of related ones");
    app.add_option("--task", c.task, "goal in natural language");
    app.add_option("--client", c.client, "stub | remote");
    app.add_option("--embedder", c.embedder, "bundled | remote");
    app.add_option("--fixture", c.fixture, "scripted responses (JSON array)");
    app.add_option("--example", c.example, "worked example shown in the prompt");
    app.add_option("--k-max", c.k_max, "revision rounds");
    app.add_option("--endpoint", c.chat.endpoint, "chat completions URL");
    app.add_option("--chat-model", c.chat.model, "chat model name");
    app.add_option("--temperature", c.chat.temperature);
    app.add_option("--frequency-penalty", c.chat.frequency_penalty);
    app.add_option("--presence-penalty", c.chat.presence_penalty);
    app.add_option("--embedding-endpoint", c.embedding.endpoint, "embeddings URL");
    app.add_option("--embedding-model", c.embedding.model, "embedding model name");
    std::string key_env = c.chat.api_key_env;
    double timeout = c.chat.timeout_seconds;
    app.add_option("--api-key-env", key_env, "environment variable holding the API key");
    app.add_option("--timeout", timeout, "request timeout in seconds");
    app.add_option("--manifest", c.manifest, "batch manifest (JSON)");
    app.add_option("--csv", c.csv, "CSV output for eval");
    app.add_option("--trace", c.trace, "refinement trace output (JSON)");
    app.add_option("--index", c.index, "grounding index file (read if present, else written)");
    app.add_flag("--states-only", c.states_only, "GAR over state conditions only");
    app.add_flag("-v,--verbose", c.verbose, "diagnostics on stderr");

    using Cmd = int (*)(const RunConfig&, std::ostream&, std::ostream&);
    const std::vector<std::tuple<const char*, const char*, Cmd>> cmds{
        {"compile", "write the ASP program", cmd_compile},
        {"plan", "solve with the native planner", cmd_plan},
        {"skeleton", "generate a skeleton with the refinement loop", cmd_skeleton},
        {"ground", "ground skeleton categories in the scene", cmd_ground},
        {"eval", "run a task manifest and report Exec and GAR", cmd_eval},
        {"demo", "wash-clothes pipeline on bundled assets", cmd_demo},
    };
    for (const auto& [name, help, fn] : cmds) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    c.chat.api_key_env = c.embedding.api_key_env = key_env;
    c.chat.timeout_seconds = c.embedding.timeout_seconds = timeout;
    for (const auto& [name, help, fn] : cmds)
        if (app.got_subcommand(name)) return fn(c, out, err);
    return 2;
}

}  // namespace aspplan::cli
