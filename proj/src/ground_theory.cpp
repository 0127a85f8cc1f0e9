#include "aspplan/ground_theory.hpp"

#include <algorithm>
#include <map>

#include "aspplan/text.hpp"

namespace aspplan {

namespace {

[[noreturn]] void unsupported(const CausalRule& r, const std::string& why) {
    throw ValidationError("line " + std::to_string(r.line) + ": unsupported formula shape in '" + r.to_string() +
                          "': " + why);
}

std::vector<Literal> literals(const CausalRule& r, const Formula& f, bool positive_only) {
    auto lits = f.as_literals();
    if (!lits) unsupported(r, "expected a conjunction of literals");
    if (positive_only)
        for (const auto& l : *lits)
            if (!l.positive) unsupported(r, "negated literal in an if part; use a complement fluent instead");
    return *lits;
}

struct Shaped {
    std::optional<Atom> head;
    std::optional<Atom> action;
    std::vector<Literal> body;
    std::vector<Literal> after;
};

Shaped shape(const CausalTheory& t, const CausalRule& r) {
    Shaped s;
    using K = CausalRule::Kind;
    switch (r.kind) {
        case K::dynamic:
        case K::static_law: {
            if (r.head.op != Formula::Op::atom) unsupported(r, "the head must be a single fluent atom");
            s.head = r.head.atom;
            s.body = literals(r, r.if_part, true);
            if (r.kind == K::dynamic) {
                auto split = t.split_after(r);
                s.action = std::move(split.action);
                s.after = std::move(split.fluents);
            }
            break;
        }
        case K::inertial: s.head = r.head.atom; break;
        case K::nonexecutable: {
            auto split = t.split_after(r);
            if (!split.action) unsupported(r, "missing action atom");
            s.action = std::move(split.action);
            s.after = std::move(split.fluents);
            break;
        }
        case K::constraint: s.body = literals(r, r.if_part, false); break;
    }
    return s;
}

// Sort of every variable: the intersection over all of its argument positions.
void collect_sorts(const Signature& sig, const Atom& a, std::map<std::string, Sort>& out) {
    const Schema* schema = sig.fluent(a.name);
    if (!schema) schema = sig.action(a.name);
    if (!schema) return;
    for (std::size_t i = 0; i < a.args.size() && i < schema->sorts.size(); ++i) {
        if (!a.args[i].is_variable()) continue;
        Sort s = sig.sort(schema->sorts[i]);
        auto [it, fresh] = out.emplace(a.args[i].name, s);
        if (!fresh) it->second = it->second.intersect(s);
    }
}

std::vector<EntityId> instances(const EnvGraph& g, const Sort& s) {
    std::vector<EntityId> out;
    for (const auto& [id, e] : g.entities())
        if (s.admits(e.category)) out.push_back(id);
    return out;
}

template <typename Fn>
void for_each_substitution(const std::vector<std::pair<std::string, std::vector<EntityId>>>& domains, Fn&& fn) {
    Substitution sub;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == domains.size()) {
            fn(sub);
            return;
        }
        for (EntityId id : domains[i].second) {
            sub[domains[i].first] = id;
            rec(i + 1);
        }
        sub.erase(domains[i].first);
    };
    rec(0);
}

std::vector<Atom> ground_schema(const Signature& sig, const EnvGraph& g, const Schema& s) {
    std::vector<std::pair<std::string, std::vector<EntityId>>> domains;
    Atom pattern{s.name, {}};
    for (std::size_t i = 0; i < s.arity(); ++i) {
        const std::string v = "V" + std::to_string(i);
        pattern.args.push_back(Term::variable(v));
        domains.emplace_back(v, instances(g, sig.sort(s.sorts[i])));
    }
    std::vector<Atom> out;
    for_each_substitution(domains, [&](const Substitution& sub) { out.push_back(substitute(pattern, sub)); });
    return out;
}

Literal ground(const Literal& l, const Substitution& s) { return {substitute(l.atom, s), l.positive}; }

std::vector<Literal> ground(const std::vector<Literal>& ls, const Substitution& s) {
    std::vector<Literal> out;
    out.reserve(ls.size());
    for (const auto& l : ls) out.push_back(ground(l, s));
    return out;
}

// Graph facts as atoms, for matching observation bodies.
std::vector<Atom> graph_atoms(const EnvGraph& g) {
    std::vector<Atom> out;
    for (const auto& [id, e] : g.entities()) {
        out.push_back({"is", {Term::number(id), Term::symbol(e.category)}});
        for (const auto& s : e.states) out.push_back({"state", {Term::number(id), Term::symbol(s)}});
    }
    for (const auto& r : g.relations())
        out.push_back({"relation", {Term::symbol(r.kind), Term::number(r.from), Term::number(r.to)}});
    return out;
}

bool unify(const Atom& pattern, const Atom& fact, std::map<std::string, Term>& env) {
    if (pattern.name != fact.name || pattern.args.size() != fact.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        const Term& f = fact.args[i];
        if (p.is_variable()) {
            if (p.name == "_") continue;
            auto [it, fresh] = env.emplace(p.name, f);
            if (!fresh && it->second != f) return false;
        } else if (p != f) {
            return false;
        }
    }
    return true;
}

void match_body(const std::vector<Atom>& body, std::size_t i, const std::vector<Atom>& facts,
                std::map<std::string, Term>& env, const std::function<void(const std::map<std::string, Term>&)>& fn) {
    if (i == body.size()) {
        fn(env);
        return;
    }
    for (const auto& f : facts) {
        auto saved = env;
        if (unify(body[i], f, env)) match_body(body, i + 1, facts, env, fn);
        env = std::move(saved);
    }
}

}  // namespace

std::string GroundLaw::to_string() const {
    auto lits = [](const std::vector<Literal>& ls) {
        return join(ls, " & ", [](const Literal& l) { return l.to_string(); });
    };
    using K = CausalRule::Kind;
    switch (kind) {
        case K::dynamic: {
            std::string s = "caused " + head->to_string();
            if (!body.empty()) s += " if " + lits(body);
            s += " after " + action->to_string();
            if (!after.empty()) s += " & " + lits(after);
            return s;
        }
        case K::static_law: {
            std::string s = "caused " + head->to_string();
            if (!body.empty()) s += " if " + lits(body);
            return s;
        }
        case K::inertial: return "inertial " + head->to_string();
        case K::nonexecutable: {
            std::string s = "nonexecutable " + action->to_string();
            if (!after.empty()) s += " if " + lits(after);
            return s;
        }
        case K::constraint: return "constraint " + lits(body);
    }
    return {};
}

std::vector<const GroundLaw*> GroundCausalTheory::of_kind(CausalRule::Kind k) const {
    std::vector<const GroundLaw*> out;
    for (const auto& l : laws)
        if (l.kind == k) out.push_back(&l);
    return out;
}

GroundCausalTheory ground_theory(const CausalTheory& t, const EnvGraph& g, int horizon, const ActionFilter& filter) {
    if (horizon < 0) throw ValidationError("horizon must be nonnegative");
    const Signature& sig = t.signature;
    GroundCausalTheory gt;
    gt.horizon = horizon;

    for (const auto& f : sig.fluents) {
        auto atoms = ground_schema(sig, g, f);
        gt.fluents.insert(gt.fluents.end(), atoms.begin(), atoms.end());
    }
    std::sort(gt.fluents.begin(), gt.fluents.end());
    const std::set<Atom> fluent_set(gt.fluents.begin(), gt.fluents.end());

    for (const auto& a : sig.actions)
        for (auto& atom : ground_schema(sig, g, a))
            if (!filter || filter(atom)) gt.actions.push_back(std::move(atom));
    std::sort(gt.actions.begin(), gt.actions.end());
    const std::set<Atom> action_set(gt.actions.begin(), gt.actions.end());

    auto complement_instance = [&](const Atom& head) -> std::optional<Atom> {
        for (const auto& c : sig.complements) {
            const Atom* mine = nullptr;
            const Atom* other = nullptr;
            if (c.first.name == head.name) {
                mine = &c.first;
                other = &c.second;
            } else if (c.second.name == head.name) {
                mine = &c.second;
                other = &c.first;
            }
            if (!mine) continue;
            Substitution sub;
            for (std::size_t i = 0; i < mine->args.size(); ++i) sub[mine->args[i].name] = head.args[i].value;
            Atom inst = substitute(*other, sub);
            if (fluent_set.count(inst)) return inst;
            return std::nullopt;
        }
        return std::nullopt;
    };

    std::set<std::string> warned;
    for (const auto& r : t.rules) {
        Shaped s = shape(t, r);
        std::map<std::string, Sort> sorts;
        std::vector<Atom> atoms;
        if (s.head) atoms.push_back(*s.head);
        if (s.action) atoms.push_back(*s.action);
        for (const auto& l : s.body) atoms.push_back(l.atom);
        for (const auto& l : s.after) atoms.push_back(l.atom);
        for (const auto& a : atoms) collect_sorts(sig, a, sorts);

        std::vector<std::pair<std::string, std::vector<EntityId>>> domains;
        bool empty_domain = false;
        for (const auto& [var, sort] : sorts) {
            domains.emplace_back(var, instances(g, sort));
            if (domains.back().second.empty()) empty_domain = true;
        }
        if (empty_domain) {
            if (warned.insert(r.to_string()).second)
                gt.warnings.push_back("line " + std::to_string(r.line) + ": no instances for '" + r.to_string() + "'");
            continue;
        }

        for_each_substitution(domains, [&](const Substitution& sub) {
            GroundLaw law;
            law.kind = r.kind;
            law.source = &r;
            if (s.head) {
                law.head = substitute(*s.head, sub);
                if (!fluent_set.count(*law.head)) return;
            }
            if (s.action) {
                law.action = substitute(*s.action, sub);
                if (!action_set.count(*law.action)) return;
            }
            law.body = ground(s.body, sub);
            law.after = ground(s.after, sub);
            for (const auto* part : {&law.body, &law.after})
                for (const auto& l : *part)
                    if (!fluent_set.count(l.atom)) {
                        // A positive literal over a non-existent fluent can never hold.
                        if (l.positive) return;
                    }
            std::erase_if(law.body, [&](const Literal& l) { return !l.positive && !fluent_set.count(l.atom); });
            std::erase_if(law.after, [&](const Literal& l) { return !l.positive && !fluent_set.count(l.atom); });
            if (r.kind == CausalRule::Kind::inertial) law.complement = complement_instance(*law.head);
            gt.laws.push_back(std::move(law));
        });
    }

    for (const auto& c : sig.complements) {
        for (const auto& f : gt.fluents) {
            if (f.name != c.first.name) continue;
            auto other = complement_instance(f);
            if (other) gt.complements.emplace_back(f, *other);
        }
    }

    const auto facts = graph_atoms(g);
    std::set<Atom> initial;
    for (const auto& o : t.observations) {
        if (o.graph_body.empty()) {
            const Schema* s = sig.fluent(o.fluent.name);
            for (auto& a : ground_schema(sig, g, *s)) {
                std::map<std::string, Term> env;
                if (unify(o.fluent, a, env)) initial.insert(std::move(a));
            }
            continue;
        }
        std::map<std::string, Term> env;
        match_body(o.graph_body, 0, facts, env, [&](const std::map<std::string, Term>& bound) {
            Atom a{o.fluent.name, {}};
            for (const auto& arg : o.fluent.args) {
                if (arg.is_variable()) {
                    auto it = bound.find(arg.name);
                    if (it == bound.end() || it->second.kind != Term::Kind::number) return;
                    a.args.push_back(it->second);
                } else {
                    a.args.push_back(arg);
                }
            }
            if (fluent_set.count(a)) initial.insert(std::move(a));
        });
    }
    gt.initial.assign(initial.begin(), initial.end());
    return gt;
}

std::vector<SkeletonPlan> flatten_skeleton(const SkeletonPlan& p, const Signature& sig) {
    std::vector<SkeletonPlan> out;
    std::set<std::string> active;
    std::function<void(const SkeletonPlan&)> rec = [&](const SkeletonPlan& q) {
        switch (q.kind) {
            case SkeletonPlan::Kind::action:
                if (q.args.empty() && sig.is_subtask(q.name) && !sig.action(q.name)) {
                    rec(SkeletonPlan::subtask(q.name));
                    return;
                }
                out.push_back(q);
                return;
            case SkeletonPlan::Kind::fluent: out.push_back(q); return;
            case SkeletonPlan::Kind::subtask: {
                auto it = sig.subtasks.find(q.name);
                if (it == sig.subtasks.end()) throw ValidationError("unknown subtask '" + q.name + "'");
                if (!active.insert(q.name).second)
                    throw ValidationError("circular subtask reference through '" + q.name + "'");
                rec(it->second);
                active.erase(q.name);
                return;
            }
            case SkeletonPlan::Kind::sequence:
                for (const auto& s : q.steps) rec(s);
                return;
        }
    };
    rec(p);
    return out;
}

std::set<EntityId> skeleton_entities(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p) {
    std::set<EntityId> out;
    auto add_term = [&](const Term& term) {
        if (term.kind == Term::Kind::number) {
            if (g.contains(term.value)) out.insert(term.value);
        } else if (term.kind == Term::Kind::symbol) {
            for (EntityId id : g.entities_of(term.name)) out.insert(id);
        }
    };
    for (const auto& e : flatten_skeleton(p, t.signature)) {
        if (e.kind == SkeletonPlan::Kind::action) {
            for (const auto& a : e.args) add_term(a);
        } else {
            std::vector<Atom> atoms;
            e.spec.collect_atoms(atoms);
            for (const auto& a : atoms)
                for (const auto& term : a.args)
                    if (term.kind == Term::Kind::number) add_term(term);
        }
    }
    // Relation ancestors: everything reachable along from -> to edges.
    std::vector<EntityId> stack(out.begin(), out.end());
    while (!stack.empty()) {
        EntityId cur = stack.back();
        stack.pop_back();
        for (const auto& r : g.relations())
            if (r.from == cur && out.insert(r.to).second) stack.push_back(r.to);
    }
    return out;
}

ActionFilter related_actions(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p) {
    const auto entities = skeleton_entities(t, g, p);
    if (entities.empty()) return nullptr;
    std::set<std::string> verbs = t.signature.support_verbs;
    std::set<std::string> goal_fluents;
    for (const auto& e : flatten_skeleton(p, t.signature)) {
        if (e.kind == SkeletonPlan::Kind::action) {
            verbs.insert(e.name);
        } else {
            std::vector<Atom> atoms;
            e.spec.collect_atoms(atoms);
            for (const auto& a : atoms) goal_fluents.insert(a.name);
        }
    }
    // Fluent specs relate the verbs whose dynamic laws cause the named fluents.
    for (const auto& r : t.rules) {
        if (r.kind != CausalRule::Kind::dynamic || r.head.op != Formula::Op::atom) continue;
        if (!goal_fluents.count(r.head.atom.name)) continue;
        auto split = t.split_after(r);
        if (split.action) verbs.insert(split.action->name);
    }
    return [entities, verbs](const Atom& a) {
        if (!verbs.count(a.name)) return false;
        for (std::size_t i = 1; i < a.args.size(); ++i)
            if (a.args[i].kind != Term::Kind::number || !entities.count(a.args[i].value)) return false;
        return true;
    };
}

// ---------------------------------------------------------------------------

std::string TimedAtom::to_string() const { return atom.to_string() + "_" + std::to_string(time); }

std::string TimedLiteral::to_string() const { return (positive ? "" : "¬") + atom.to_string(); }

std::string TimedCausalRule::to_string() const {
    std::string lhs = body.empty() ? "⊤" : join(body, " ∧ ", [](const TimedLiteral& l) { return l.to_string(); });
    return lhs + " ⇒ " + (head ? head->to_string() : "⊥");
}

namespace {

TimedLiteral fl(const Atom& a, int t, bool positive = true) { return {{a, t, false}, positive}; }
TimedLiteral ac(const Atom& a, int t, bool positive = true) { return {{a, t, true}, positive}; }

void append(std::vector<TimedLiteral>& out, const std::vector<Literal>& ls, int t) {
    for (const auto& l : ls) out.push_back(fl(l.atom, t, l.positive));
}

}  // namespace

std::vector<TimedCausalRule> causal_rules(const GroundCausalTheory& gt) {
    std::vector<TimedCausalRule> out;
    const int n = gt.horizon;
    using K = CausalRule::Kind;
    for (const auto& law : gt.laws) {
        switch (law.kind) {
            case K::dynamic:
                for (int t = 0; t < n; ++t) {
                    TimedCausalRule r;
                    r.body.push_back(ac(*law.action, t));
                    append(r.body, law.after, t);
                    append(r.body, law.body, t + 1);
                    r.head = fl(*law.head, t + 1);
                    out.push_back(std::move(r));
                }
                break;
            case K::static_law:
                for (int t = 0; t <= n; ++t) {
                    TimedCausalRule r;
                    append(r.body, law.body, t);
                    r.head = fl(*law.head, t);
                    out.push_back(std::move(r));
                }
                break;
            case K::inertial:
                for (int t = 0; t < n; ++t) {
                    TimedCausalRule r;
                    r.body.push_back(fl(*law.head, t));
                    if (law.complement) r.body.push_back(fl(*law.complement, t + 1, false));
                    r.head = fl(*law.head, t + 1);
                    out.push_back(std::move(r));
                }
                break;
            case K::nonexecutable:
                for (int t = 0; t < n; ++t) {
                    TimedCausalRule r;
                    r.body.push_back(ac(*law.action, t));
                    append(r.body, law.after, t);
                    out.push_back(std::move(r));
                }
                break;
            case K::constraint:
                for (int t = 0; t <= n; ++t) {
                    TimedCausalRule r;
                    append(r.body, law.body, t);
                    out.push_back(std::move(r));
                }
                break;
        }
    }
    return out;
}

std::vector<TimedCausalRule> trajectory_theory(const GroundCausalTheory& gt) {
    auto out = causal_rules(gt);
    const int n = gt.horizon;
    for (const auto& f : gt.initial) out.push_back({{}, fl(f, 0)});
    for (int t = 0; t <= n; ++t) {
        for (const auto& f : gt.fluents) out.push_back({{fl(f, t, false)}, fl(f, t, false)});
        for (const auto& [a, b] : gt.complements) out.push_back({{fl(a, t), fl(b, t)}, std::nullopt});
    }
    for (int t = 0; t < n; ++t) {
        for (const auto& a : gt.actions) {
            out.push_back({{ac(a, t)}, ac(a, t)});
            out.push_back({{ac(a, t, false)}, ac(a, t, false)});
        }
        for (std::size_t i = 0; i < gt.actions.size(); ++i)
            for (std::size_t j = i + 1; j < gt.actions.size(); ++j)
                out.push_back({{ac(gt.actions[i], t), ac(gt.actions[j], t)}, std::nullopt});
        TimedCausalRule none;
        for (const auto& a : gt.actions) none.body.push_back(ac(a, t, false));
        out.push_back(std::move(none));
    }
    return out;
}

std::vector<TimedAtom> trajectory_atoms(const GroundCausalTheory& gt) {
    std::vector<TimedAtom> out;
    for (int t = 0; t <= gt.horizon; ++t)
        for (const auto& f : gt.fluents) out.push_back({f, t, false});
    for (int t = 0; t < gt.horizon; ++t)
        for (const auto& a : gt.actions) out.push_back({a, t, true});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aspplan
