#include "aspplan/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "aspplan/skeleton.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

namespace {

bool unify_args(const Atom& pattern, const Atom& ground, Substitution& sub) {
    if (pattern.name != ground.name || pattern.args.size() != ground.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        const Term& v = ground.args[i];
        if (p.is_variable()) {
            if (v.kind != Term::Kind::number) return false;
            auto [it, fresh] = sub.emplace(p.name, v.value);
            if (!fresh && it->second != v.value) return false;
        } else if (p != v) {
            return false;
        }
    }
    return true;
}

std::optional<Condition> as_condition(const Atom& a) {
    auto id = [](const Term& t) { return t.kind == Term::Kind::number; };
    if (a.name == "state" && a.args.size() == 2 && id(a.args[0]) && a.args[1].kind == Term::Kind::symbol)
        return Condition::state(a.args[0].value, a.args[1].name);
    if (a.name == "relation" && a.args.size() == 3 && a.args[0].kind == Term::Kind::symbol && id(a.args[1]) &&
        id(a.args[2]))
        return Condition::relation(a.args[0].name, a.args[1].value, a.args[2].value);
    return std::nullopt;
}

}  // namespace

ConditionSet conditions_of(const CausalTheory& t, const EnvGraph& g, const GroundCausalTheory& gt, const State& s) {
    ConditionSet out = snapshot_states(g);
    for (const auto& o : t.observations) {
        std::vector<const Atom*> guards;
        const Atom* fact = nullptr;
        bool mappable = true;
        for (const auto& b : o.graph_body) {
            if (b.name == "is") guards.push_back(&b);
            else if (fact) mappable = false;
            else fact = &b;
        }
        if (!mappable || !fact) continue;
        for (const auto& f : gt.fluents) {
            Substitution sub;
            if (!unify_args(o.fluent, f, sub)) continue;
            const Atom ground = substitute(*fact, sub);
            auto c = as_condition(ground);
            if (!c) continue;
            const bool guarded = std::all_of(guards.begin(), guards.end(), [&](const Atom* is) {
                const Atom gi = substitute(*is, sub);
                if (gi.args.size() != 2 || gi.args[0].kind != Term::Kind::number) return false;
                const Entity* e = g.find(gi.args[0].value);
                return e && e->category == gi.args[1].name;
            });
            if (!guarded) continue;
            if (s.count(f)) out.insert(*c);
            else out.erase(*c);
        }
    }
    return out;
}

ExecResult execute(const EnvGraph& g, const CausalTheory& t, const std::vector<Atom>& actions) {
    for (const auto& a : actions)
        for (const auto& arg : a.args) {
            if (arg.kind != Term::Kind::number) throw Error("action " + a.to_string() + " is not ground");
            if (!g.contains(arg.value))
                throw Error("action " + a.to_string() + " refers to unknown entity " + std::to_string(arg.value));
        }
    const GroundCausalTheory gt = ground_theory(t, g, 1);
    const TransitionSystem ts(gt);
    ExecResult r;
    std::string why;
    auto s = ts.initial_state(&why);
    if (!s) throw Error(why);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto next = ts.step(*s, actions[i]);
        if (!next.applicable()) {
            r.executable = false;
            r.failed_step = FailedStep{i, actions[i], next.reason};
            break;
        }
        s = next.successors.front();
    }
    r.final_fluents = *s;
    r.final_state = conditions_of(t, g, gt, *s);
    return r;
}

ExecResult execute(const EnvGraph& g, const CausalTheory& t, const Trajectory& tr) {
    return execute(g, t, tr.actions);
}

namespace {

Condition parse_condition(const json& c) {
    if (c.contains("state")) return Condition::state(c.at("id").get<EntityId>(), c.at("state").get<std::string>());
    if (c.contains("relation"))
        return Condition::relation(c.at("relation").get<std::string>(), c.at("from").get<EntityId>(),
                                   c.at("to").get<EntityId>());
    throw Error("condition needs \"state\" or \"relation\": " + c.dump());
}

}  // namespace

GoalSpec load_goal_spec(std::string_view json_text, const EnvGraph& g) {
    GoalSpec spec;
    spec.s_initial = snapshot_states(g);
    spec.s_gt = spec.s_initial;
    try {
        const json j = json::parse(json_text);
        spec.task = j.value("task", "");
        for (const auto& c : j.value("add", json::array())) spec.s_gt.insert(parse_condition(c));
        for (const auto& c : j.value("remove", json::array())) spec.s_gt.erase(parse_condition(c));
    } catch (const json::exception& e) {
        throw Error(std::string("malformed goal spec: ") + e.what());
    }
    for (const auto& c : spec.s_gt) {
        if (!g.contains(c.first) || (c.kind == Condition::Kind::relation && !g.contains(c.second)))
            throw Error("goal condition " + c.to_string() + " mentions an unknown entity");
    }
    return spec;
}

GoalSpec load_goal_spec_file(const std::string& path, const EnvGraph& g) { return load_goal_spec(read_file(path), g); }

double gar(const ConditionSet& s_initial, const ConditionSet& s_gt, const ConditionSet& s_final, bool states_only) {
    auto keep = [&](const Condition& c) { return !states_only || c.kind == Condition::Kind::state; };
    std::size_t required = 0;
    std::size_t missing = 0;
    for (const auto& c : s_gt) {
        if (!keep(c) || s_initial.count(c)) continue;
        ++required;
        if (!s_final.count(c)) ++missing;
    }
    if (required == 0) return 1.0;
    return 1.0 - static_cast<double>(missing) / static_cast<double>(required);
}

std::vector<BatchTask> load_manifest(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return p.empty() ? p : (base / p).lexically_normal().string(); };
    std::vector<BatchTask> out;
    try {
        const json j = json::parse(read_file(path));
        for (const auto& t : j.at("tasks")) {
            BatchTask b;
            b.name = t.at("name").get<std::string>();
            b.scene = resolve(t.at("scene").get<std::string>());
            b.model = resolve(t.at("model").get<std::string>());
            b.skeleton = resolve(t.value("skeleton", ""));
            b.plan = resolve(t.value("plan", ""));
            b.goal = resolve(t.at("goal").get<std::string>());
            if (b.skeleton.empty() == b.plan.empty())
                throw Error("task " + b.name + " needs exactly one of \"skeleton\" and \"plan\"");
            out.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw Error(path + ": malformed manifest: " + e.what());
    }
    return out;
}

namespace {

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::string BatchReport::csv() const {
    std::string out = "task,executable,gar,steps,error\n";
    for (const auto& r : rows)
        out += csv_field(r.task) + "," + (r.executable ? "1" : "0") + "," + fixed(r.gar, 4) + "," +
               std::to_string(r.steps) + "," + csv_field(r.error) + "\n";
    out += "aggregate," + (exec_rate ? fixed(*exec_rate, 4) : "undefined") + "," +
           (mean_gar ? fixed(*mean_gar, 4) : "undefined") + ",,\n";
    return out;
}

std::string BatchReport::table() const {
    std::size_t w = std::string("aggregate").size();
    for (const auto& r : rows) w = std::max(w, r.task.size());
    auto pad = [](std::string s, std::size_t n) {
        s.resize(std::max(n, s.size()), ' ');
        return s;
    };
    std::string out = pad("task", w) + "  " + pad("exec", 9) + "  " + pad("gar", 9) + "  steps  note\n";
    for (const auto& r : rows)
        out += pad(r.task, w) + "  " + pad(r.executable ? "yes" : "no", 9) + "  " + pad(fixed(r.gar, 3), 9) + "  " +
               pad(std::to_string(r.steps), 5) + "  " + r.error + "\n";
    out += pad("aggregate", w) + "  " + pad(exec_rate ? fixed(*exec_rate * 100, 1) + "%" : "undefined", 9) + "  " +
           pad(mean_gar ? fixed(*mean_gar, 3) : "undefined", 9) + "\n";
    return out;
}

BatchReport evaluate_batch(const std::vector<BatchTask>& tasks, const PlannerOptions& opts, bool states_only) {
    BatchReport rep;
    for (const auto& task : tasks) {
        BatchRow row;
        row.task = task.name;
        try {
            const EnvGraph g = load_graph_file(task.scene);
            const CausalTheory t = load_action_model(task.model);
            const GoalSpec goal = load_goal_spec_file(task.goal, g);
            std::vector<Atom> actions;
            if (!task.plan.empty()) {
                actions = parse_plan_text(read_file(task.plan));
            } else {
                const SolveResult sr = solve(t, g, load_skeleton_file(task.skeleton), opts);
                if (sr.status != SolveStatus::found)
                    throw Error("planner: " + std::string(to_string(sr.status)) + " (" + sr.reason + ")");
                actions = sr.trajectory->actions;
            }
            const ExecResult ex = execute(g, t, actions);
            row.executable = ex.executable;
            row.steps = static_cast<int>(actions.size());
            row.gar = gar(goal.s_initial, goal.s_gt, ex.final_state, states_only);
            if (ex.failed_step)
                row.error = "step " + std::to_string(ex.failed_step->index + 1) + " " +
                            ex.failed_step->action.to_string() + ": " + ex.failed_step->reason;
        } catch (const std::exception& e) {
            row.executable = false;
            row.gar = 0;
            row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
    }
    if (!rep.rows.empty()) {
        double ex = 0, gr = 0;
        for (const auto& r : rep.rows) {
            ex += r.executable ? 1 : 0;
            gr += r.gar;
        }
        rep.exec_rate = ex / static_cast<double>(rep.rows.size());
        rep.mean_gar = gr / static_cast<double>(rep.rows.size());
    }
    return rep;
}

}  // namespace aspplan
