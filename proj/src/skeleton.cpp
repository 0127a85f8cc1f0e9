#include "aspplan/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include <nlohmann/json.hpp>

#include "aspplan/ground_theory.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

std::string PlanLine::to_string() const {
    std::string out = "[" + verb + "]";
    for (const auto& t : targets) out += " <" + t + ">";
    return out;
}

std::string VerifierReport::text() const {
    return join(errors, "\n", [](const VerifierError& e) { return e.message; });
}

std::optional<std::string> extract_json_object(std::string_view text) {
    for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            const char c = text[i];
            if (in_string) {
                if (escaped) escaped = false;
                else if (c == '\\') escaped = true;
                else if (c == '"') in_string = false;
                continue;
            }
            if (c == '"') in_string = true;
            else if (c == '{') ++depth;
            else if (c == '}' && --depth == 0) {
                std::string candidate(text.substr(start, i - start + 1));
                if (json::accept(candidate)) return candidate;
                break;
            }
        }
    }
    return std::nullopt;
}

namespace {

std::string normalize_target(std::string_view s) {
    std::string out;
    for (char c : trim(s)) out += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string format_message(std::string_view raw) {
    return "Invalid format in \"" + std::string(raw) +
           "\". Each action should be formatted as \"[verb] <target1> <target2>\".";
}

}  // namespace

std::optional<PlanLine> parse_plan_line(std::string_view line) {
    static const std::regex shape(R"(^\s*\[\s*([A-Za-z_][A-Za-z0-9_ ]*?)\s*\]((\s*<[^<>]*>)*)\s*$)");
    static const std::regex target(R"(<([^<>]*)>)");
    const std::string s(line);
    std::smatch m;
    if (!std::regex_match(s, m, shape)) return std::nullopt;
    PlanLine out;
    out.raw = s;
    out.verb = normalize_target(m[1].str());
    const std::string rest = m[2].str();
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), target); it != std::sregex_iterator(); ++it) {
        std::string t = normalize_target((*it)[1].str());
        if (t.empty()) return std::nullopt;
        out.targets.push_back(std::move(t));
    }
    return out;
}

ParsedResponse parse_llm_response(std::string_view text) {
    ParsedResponse out;
    auto fail = [&](std::string msg) { out.report.errors.push_back({0, "json", std::move(msg)}); };
    const auto obj = extract_json_object(text);
    if (!obj) {
        fail("response is not parseable JSON");
        return out;
    }
    const json j = json::parse(*obj);
    if (!j.contains("actions") || !j["actions"].is_array()) {
        fail("response has no \"actions\" list");
        return out;
    }
    const auto& actions = j["actions"];
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (!actions[i].is_string()) {
            out.lines.push_back(std::nullopt);
            out.report.errors.push_back({i, "format", format_message(actions[i].dump())});
            continue;
        }
        const std::string raw = actions[i].get<std::string>();
        auto line = parse_plan_line(raw);
        if (!line) out.report.errors.push_back({i, "format", format_message(raw)});
        out.lines.push_back(std::move(line));
    }
    return out;
}

namespace {

void verify_line(std::size_t i, const PlanLine& l, const VerbTable& verbs, VerifierReport& r) {
    auto it = verbs.find(l.verb);
    if (it == verbs.end()) {
        r.errors.push_back({i, "unknown_verb",
                            "Unknown action \"[" + l.verb + "]\". Please use only the permissible actions."});
    } else if (l.targets.size() != it->second) {
        r.errors.push_back(
            {i, "arity", "Invalid argument number. Please check action format of \"" + l.verb + "\"."});
    }
}

}  // namespace

VerifierReport grammar_verify(const std::vector<PlanLine>& lines, const VerbTable& verbs,
                              const std::set<std::string>&) {
    VerifierReport r;
    for (std::size_t i = 0; i < lines.size(); ++i) verify_line(i, lines[i], verbs, r);
    return r;
}

VerifierReport verify_response(const ParsedResponse& parsed, const VerbTable& verbs,
                               const std::set<std::string>&) {
    VerifierReport r = parsed.report;
    for (std::size_t i = 0; i < parsed.lines.size(); ++i)
        if (parsed.lines[i]) verify_line(i, *parsed.lines[i], verbs, r);
    std::stable_sort(r.errors.begin(), r.errors.end(),
                     [](const VerifierError& a, const VerifierError& b) { return a.line < b.line; });
    return r;
}

namespace {

Term target_term(const std::string& t) {
    if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return Term::number(std::stoll(t));
    return Term::symbol(t);
}

}  // namespace

SkeletonPlan to_skeleton(const std::vector<PlanLine>& lines) {
    std::vector<SkeletonPlan> steps;
    for (const auto& l : lines) {
        if (!is_identifier(l.verb)) throw ValidationError("malformed verb in " + l.to_string());
        std::vector<Term> args;
        for (const auto& t : l.targets) {
            if (t.empty()) throw ValidationError("empty target in " + l.to_string());
            args.push_back(target_term(t));
        }
        steps.push_back(SkeletonPlan::action(l.verb, std::move(args)));
    }
    return SkeletonPlan::sequence(std::move(steps));
}

std::vector<PlanLine> to_plan_lines(const SkeletonPlan& p) {
    std::vector<PlanLine> out;
    auto one = [&](const SkeletonPlan& s) {
        if (s.kind != SkeletonPlan::Kind::action)
            throw ValidationError("only action steps have a plan-line form: " + s.to_string());
        PlanLine l;
        l.verb = s.name;
        for (const auto& a : s.args) l.targets.push_back(a.to_string());
        l.raw = l.to_string();
        out.push_back(std::move(l));
    };
    if (p.kind == SkeletonPlan::Kind::sequence)
        for (const auto& s : p.steps) one(s);
    else
        one(p);
    return out;
}

std::string skeleton_json(const SkeletonPlan& p, std::string_view thoughts) {
    json j = json::object();
    if (!thoughts.empty()) j["thoughts"] = std::string(thoughts);
    j["actions"] = json::array();
    for (const auto& l : to_plan_lines(p)) j["actions"].push_back(l.to_string());
    return j.dump(2) + "\n";
}

SkeletonPlan load_skeleton_json(std::string_view text) {
    const ParsedResponse parsed = parse_llm_response(text);
    if (!parsed.report.valid()) throw ValidationError("skeleton: " + parsed.report.text());
    std::vector<PlanLine> lines;
    for (const auto& l : parsed.lines) lines.push_back(*l);
    return to_skeleton(lines);
}

SkeletonPlan load_skeleton_file(const std::string& path) { return load_skeleton_json(read_file(path)); }

bool step_matches(const SkeletonPlan& step, const Atom& action, const EnvGraph& g) {
    if (step.kind != SkeletonPlan::Kind::action || step.name != action.name) return false;
    if (step.args.size() + 1 > action.args.size()) return false;
    for (std::size_t i = 0; i < step.args.size(); ++i) {
        const Term& want = step.args[i];
        const Term& got = action.args[i + 1];
        if (want.kind == Term::Kind::number) {
            if (got != want) return false;
        } else if (want.kind == Term::Kind::symbol) {
            if (got.kind != Term::Kind::number) return false;
            const Entity* e = g.find(got.value);
            if (!e || e->category != want.name) return false;
        }
    }
    return true;
}

std::optional<SatisfactionWitness> satisfies_witness(const Trajectory& tr, const SkeletonPlan& p,
                                                     const Signature& sig, const EnvGraph& g) {
    const std::vector<SkeletonPlan> elems = flatten_skeleton(p, sig);
    const int n = tr.horizon();
    if (tr.states.size() != static_cast<std::size_t>(n) + 1) throw Error("trajectory has mismatched states");

    // Ends of segments starting at s that satisfy element e.
    auto ok = [&](const SkeletonPlan& e, int s, int end) {
        if (e.kind == SkeletonPlan::Kind::action)
            return s < n && end > s && step_matches(e, tr.actions[static_cast<std::size_t>(s)], g);
        const State& st = tr.states[static_cast<std::size_t>(s)];
        return end >= s && evaluate(e.spec, [&](const Atom& a) { return st.count(a) != 0; });
    };

    const std::size_t m = elems.size();
    if (m == 0) return SatisfactionWitness{};
    // reach[k] = possible split points after k elements.
    std::vector<std::vector<bool>> reach(m + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
    reach[0][0] = true;
    for (std::size_t k = 0; k < m; ++k)
        for (int s = 0; s <= n; ++s) {
            if (!reach[k][static_cast<std::size_t>(s)]) continue;
            for (int e = s; e <= n; ++e)
                if (ok(elems[k], s, e)) reach[k + 1][static_cast<std::size_t>(e)] = true;
        }
    if (!reach[m][static_cast<std::size_t>(n)]) return std::nullopt;

    SatisfactionWitness w;
    w.splits.assign(m, n);
    w.bindings.resize(m);
    int end = n;
    for (std::size_t k = m; k-- > 0;) {
        int start = -1;
        for (int s = 0; s <= end; ++s)
            if (reach[k][static_cast<std::size_t>(s)] && ok(elems[k], s, end)) {
                start = s;
                break;
            }
        w.splits[k] = end;
        Binding b;
        b.element = k;
        b.time = start;
        if (elems[k].kind == SkeletonPlan::Kind::action) b.action = tr.actions[static_cast<std::size_t>(start)];
        w.bindings[k] = std::move(b);
        end = start;
    }
    return w;
}

bool satisfies(const Trajectory& tr, const SkeletonPlan& p, const Signature& sig, const EnvGraph& g) {
    return satisfies_witness(tr, p, sig, g).has_value();
}

}  // namespace aspplan
