#include "aspplan/asp_grounder.hpp"

#include <functional>
#include <map>
#include <set>

#include "aspplan/text.hpp"

namespace aspplan {

namespace {

using Env = std::map<std::string, AspTerm>;

AspTerm rewrite(const AspTerm& t, const std::map<std::string, AspTerm>& constants) {
    switch (t.kind) {
        case AspTerm::Kind::symbol: {
            auto it = constants.find(t.name);
            return it == constants.end() ? t : it->second;
        }
        case AspTerm::Kind::function: {
            AspTerm out = t;
            for (auto& a : out.args) a = rewrite(a, constants);
            return out;
        }
        case AspTerm::Kind::sum: {
            AspTerm a = rewrite(t.args[0], constants);
            AspTerm b = rewrite(t.args[1], constants);
            if (a.kind == AspTerm::Kind::number && b.kind == AspTerm::Kind::number)
                return AspTerm::number(a.value + b.value);
            return AspTerm::sum(std::move(a), std::move(b));
        }
        default: return t;
    }
}

AspLiteral rewrite(const AspLiteral& l, const std::map<std::string, AspTerm>& c) { return {rewrite(l.atom, c), l.negated}; }

AspRule rewrite(const AspRule& r, const std::map<std::string, AspTerm>& c) {
    AspRule out;
    if (r.head) out.head = rewrite(*r.head, c);
    if (r.choice) {
        AspChoice ch = *r.choice;
        ch.element = rewrite(ch.element, c);
        for (auto& l : ch.condition) l = rewrite(l, c);
        out.choice = std::move(ch);
    }
    for (const auto& l : r.body) out.body.push_back(rewrite(l, c));
    return out;
}

bool unify(const AspTerm& pattern, const AspTerm& ground, Env& env) {
    switch (pattern.kind) {
        case AspTerm::Kind::variable: {
            if (pattern.name == "_") return true;
            auto [it, fresh] = env.emplace(pattern.name, ground);
            return fresh || it->second == ground;
        }
        case AspTerm::Kind::function:
            if (ground.kind != AspTerm::Kind::function || ground.name != pattern.name ||
                ground.args.size() != pattern.args.size())
                return false;
            for (std::size_t i = 0; i < pattern.args.size(); ++i)
                if (!unify(pattern.args[i], ground.args[i], env)) return false;
            return true;
        case AspTerm::Kind::sum: throw Error("arithmetic over variables is not supported: " + pattern.to_string());
        default: return pattern == ground;
    }
}

AspTerm bind_vars(const AspTerm& t, const Env& env) {
    if (t.kind == AspTerm::Kind::variable) {
        auto it = env.find(t.name);
        return it == env.end() ? t : it->second;
    }
    if (t.args.empty()) return t;
    AspTerm out = t;
    for (auto& a : out.args) a = bind_vars(a, env);
    if (out.kind == AspTerm::Kind::sum && out.args[0].kind == AspTerm::Kind::number &&
        out.args[1].kind == AspTerm::Kind::number)
        return AspTerm::number(out.args[0].value + out.args[1].value);
    return out;
}

using Key = std::pair<std::string, std::size_t>;

Key key_of(const AspTerm& t) { return {t.name, t.args.size()}; }

class Grounder {
public:
    void add_possible(const AspTerm& a, bool& changed) {
        if (known_.insert(a).second) {
            index_[key_of(a)].push_back(a);
            changed = true;
        }
    }

    // Every substitution making all positive literals of `body` possible.
    void matches(const std::vector<AspLiteral>& body, std::size_t i, Env& env,
                 const std::function<void(const Env&)>& fn) const {
        while (i < body.size() && body[i].negated) ++i;
        if (i == body.size()) {
            fn(env);
            return;
        }
        const AspTerm pattern = bind_vars(body[i].atom, env);
        if (pattern.is_ground()) {
            if (known_.count(pattern)) matches(body, i + 1, env, fn);
            return;
        }
        auto it = index_.find(key_of(pattern));
        if (it == index_.end()) return;
        for (const auto& cand : it->second) {
            Env next = env;
            if (unify(pattern, cand, next)) matches(body, i + 1, next, fn);
        }
    }

    std::set<AspTerm> known_;
    std::map<Key, std::vector<AspTerm>> index_;
};

struct GroundInstance {
    std::optional<AspTerm> head;
    std::vector<AspTerm> elements;  // choice elements
    bool choice = false;
    std::vector<AspTerm> pos;
    std::vector<AspTerm> neg;
};

AspTerm require_ground(const AspTerm& t, const AspRule& r) {
    if (!t.is_ground()) throw Error("unsafe variable in rule '" + r.to_string() + "' (" + t.to_string() + ")");
    return t;
}

}  // namespace

GroundProgram ground_asp(const AspProgram& p, std::optional<int> horizon) {
    std::map<std::string, AspTerm> constants;
    std::map<std::string, std::vector<std::string>> params;
    std::map<std::string, std::vector<AspRule>> blocks;
    std::map<std::string, std::vector<AspTerm>> externals;
    std::vector<std::string> order;
    std::string current = "base";
    params["base"] = {};
    order.push_back("base");
    for (const auto& s : p.statements) {
        switch (s.kind) {
            case AspStatement::Kind::program:
                current = s.name;
                if (!params.count(current)) order.push_back(current);
                params[current] = s.params;
                break;
            case AspStatement::Kind::constant: constants[s.name] = s.term; break;
            case AspStatement::Kind::external: externals[current].push_back(s.term); break;
            case AspStatement::Kind::rule: blocks[current].push_back(s.rule); break;
            default: break;
        }
    }
    if (horizon) constants["horizon"] = AspTerm::number(*horizon);
    auto hz = constants.find("horizon");
    if (hz == constants.end() || hz->second.kind != AspTerm::Kind::number)
        throw Error("no horizon: pass one or declare #const horizon");
    const int n = static_cast<int>(hz->second.value);

    std::vector<AspRule> rules;
    std::vector<AspTerm> true_externals;
    auto instantiate = [&](const std::string& block, std::optional<int> t) {
        auto c = constants;
        const auto& ps = params[block];
        if (ps.size() > 1) throw Error("block " + block + " has more than one parameter");
        if (!ps.empty()) {
            if (!t) throw Error("block " + block + " needs a parameter");
            c[ps[0]] = AspTerm::number(*t);
        }
        for (const auto& r : blocks[block]) rules.push_back(rewrite(r, c));
        for (const auto& e : externals[block]) true_externals.push_back(rewrite(e, c));
    };
    for (const auto& b : order) {
        if (b == "base") instantiate(b, std::nullopt);
        else if (b == "state") for (int t = 0; t <= n; ++t) instantiate(b, t);
        else if (b == "step") for (int t = 0; t < n; ++t) instantiate(b, t);
        else if (b == "check") instantiate(b, n);
        else throw Error("unknown program block '" + b + "'");
    }

    // Predicates defined by proper rules may not appear in choice conditions.
    std::set<Key> derived;
    for (const auto& r : rules)
        if (r.head && (!r.body.empty() || !r.head->is_ground())) derived.insert(key_of(*r.head));
    for (const auto& r : rules) {
        if (!r.choice) continue;
        if (r.choice->lower != 1 || r.choice->upper != 1)
            throw Error("only 1{...}1 choice rules are supported: " + r.to_string());
        for (const auto& l : r.choice->condition)
            if (derived.count(key_of(l.atom)))
                throw Error("choice condition " + l.atom.to_string() + " must be defined by facts");
    }

    Grounder g;
    bool changed = false;
    for (const auto& e : true_externals) g.add_possible(require_ground(e, AspRule{e, std::nullopt, {}}), changed);
    for (const auto& r : rules)
        if (r.head && r.body.empty() && r.head->is_ground()) g.add_possible(*r.head, changed);

    std::vector<GroundInstance> instances;
    std::set<std::string> seen;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            Env env;
            g.matches(r.body, 0, env, [&](const Env& e) {
                GroundInstance gi;
                for (const auto& l : r.body)
                    (l.negated ? gi.neg : gi.pos).push_back(require_ground(bind_vars(l.atom, e), r));
                if (r.head) gi.head = require_ground(bind_vars(*r.head, e), r);
                if (r.choice) {
                    gi.choice = true;
                    Env ce = e;
                    g.matches(r.choice->condition, 0, ce, [&](const Env& full) {
                        gi.elements.push_back(require_ground(bind_vars(r.choice->element, full), r));
                    });
                }
                std::string key = gi.choice ? "{" : "";
                if (gi.head) key += gi.head->to_string();
                for (const auto& a : gi.elements) key += a.to_string() + ";";
                key += ":-";
                for (const auto& a : gi.pos) key += a.to_string() + ",";
                key += "|";
                for (const auto& a : gi.neg) key += a.to_string() + ",";
                if (!seen.insert(key).second) return;
                if (gi.head) g.add_possible(*gi.head, changed);
                for (const auto& a : gi.elements) g.add_possible(a, changed);
                instances.push_back(std::move(gi));
                changed = true;
            });
        }
    }

    GroundProgram out;
    auto names = [](const std::vector<AspTerm>& ts) {
        std::vector<std::string> v;
        for (const auto& t : ts) v.push_back(t.to_string());
        return v;
    };
    for (const auto& e : true_externals) out.add_rule(e.to_string());
    for (const auto& gi : instances) {
        const auto pos = names(gi.pos);
        const auto neg = names(gi.neg);
        if (gi.choice) {
            if (gi.elements.empty()) {
                out.add_constraint(pos, neg);
                continue;
            }
            for (std::size_t i = 0; i < gi.elements.size(); ++i) {
                auto blocked = neg;
                for (std::size_t j = 0; j < gi.elements.size(); ++j)
                    if (j != i) blocked.push_back(gi.elements[j].to_string());
                out.add_rule(gi.elements[i].to_string(), pos, blocked);
            }
        } else if (gi.head) {
            out.add_rule(gi.head->to_string(), pos, neg);
        } else {
            out.add_constraint(pos, neg);
        }
    }
    return out;
}

Trajectory trajectory_from_answer_set(const AtomSet& answer_set, int horizon) {
    Trajectory tr;
    tr.states.resize(static_cast<std::size_t>(horizon) + 1);
    std::vector<std::optional<Atom>> actions(static_cast<std::size_t>(horizon));
    for (const auto& name : answer_set) {
        const AspTerm t = parse_asp_term(name);
        if (t.kind != AspTerm::Kind::function) continue;
        if (t.name == "occurs" && t.args.size() == 3) {
            int time = 0;
            Atom a = action_from_occurs(t, time);
            if (time < 0 || time >= horizon) throw Error("occurs atom outside the horizon: " + name);
            if (actions[static_cast<std::size_t>(time)]) throw Error("two actions at time " + std::to_string(time));
            actions[static_cast<std::size_t>(time)] = std::move(a);
        } else if (t.name == "h" && t.args.size() == 2 && t.args[1].kind == AspTerm::Kind::number) {
            const auto time = t.args[1].value;
            if (time < 0 || time > horizon) throw Error("h atom outside the horizon: " + name);
            tr.states[static_cast<std::size_t>(time)].insert(atom_from_term(t.args[0]));
        }
    }
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (!actions[i]) throw Error("answer set has no action at time " + std::to_string(i));
        tr.actions.push_back(*actions[i]);
    }
    return tr;
}

}  // namespace aspplan
