#include "aspplan/asp_compiler.hpp"

#include <algorithm>
#include <map>

#include "aspplan/ground_theory.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

namespace {

AspTerm conv(const Term& t) {
    switch (t.kind) {
        case Term::Kind::variable: return AspTerm::variable(t.name);
        case Term::Kind::number: return AspTerm::number(t.value);
        case Term::Kind::symbol: return AspTerm::symbol(t.name);
    }
    return {};
}

AspTerm fluent_term(const Atom& a) {
    std::vector<AspTerm> args;
    for (const auto& t : a.args) args.push_back(conv(t));
    return AspTerm::function(a.name, std::move(args));
}

AspTerm action_term(const Atom& a) {
    std::vector<AspTerm> args;
    for (std::size_t i = 1; i < a.args.size(); ++i) args.push_back(conv(a.args[i]));
    return AspTerm::function(a.name, std::move(args));
}

AspTerm step_t() { return AspTerm::symbol("t"); }
AspTerm next_t() { return AspTerm::sum(AspTerm::symbol("t"), AspTerm::number(1)); }

AspTerm h(const Atom& f, AspTerm time) { return AspTerm::function("h", {fluent_term(f), std::move(time)}); }

AspTerm occurs(const Atom& a, AspTerm time) {
    return AspTerm::function("occurs", {conv(a.args.at(0)), action_term(a), std::move(time)});
}

AspLiteral pos(AspTerm a) { return {std::move(a), false}; }
AspLiteral neg(AspTerm a) { return {std::move(a), true}; }

bool subset(const Sort& g, const Sort& s) {
    if (s.any) return true;
    if (g.any) return false;
    return std::includes(s.categories.begin(), s.categories.end(), g.categories.begin(), g.categories.end());
}

const Schema* schema_of(const Signature& sig, const Atom& a) {
    const Schema* s = sig.fluent(a.name);
    return s ? s : sig.action(a.name);
}

// in_sort guards for variables whose sort the positive body does not imply.
std::vector<AspLiteral> guards(const Signature& sig, const std::vector<Atom>& positive,
                               const std::vector<Atom>& others, std::set<std::string>* used) {
    std::map<std::string, Sort> bound;
    for (const auto& a : positive) {
        const Schema* s = schema_of(sig, a);
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!a.args[i].is_variable()) continue;
            Sort so = sig.sort(s->sorts[i]);
            auto [it, fresh] = bound.emplace(a.args[i].name, so);
            if (!fresh) it->second = it->second.intersect(so);
        }
    }
    std::vector<std::pair<std::string, std::string>> needed;
    auto consider = [&](const Atom& a) {
        const Schema* s = schema_of(sig, a);
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!a.args[i].is_variable()) continue;
            const std::string& v = a.args[i].name;
            const std::string& sort_name = s->sorts[i];
            auto it = bound.find(v);
            if (it != bound.end() && subset(it->second, sig.sort(sort_name))) continue;
            std::pair<std::string, std::string> g{v, sort_name};
            if (std::find(needed.begin(), needed.end(), g) == needed.end()) needed.push_back(g);
        }
    };
    for (const auto& a : positive) consider(a);
    for (const auto& a : others) consider(a);
    std::vector<AspLiteral> out;
    for (const auto& [v, s] : needed) {
        out.push_back(pos(AspTerm::function("in_sort", {AspTerm::variable(v), AspTerm::symbol(s)})));
        if (used) used->insert(s);
    }
    return out;
}

[[noreturn]] void unsupported(const CausalRule& r, const std::string& why) {
    throw ValidationError("line " + std::to_string(r.line) + ": unsupported formula shape in '" + r.to_string() +
                          "': " + why);
}

std::vector<Literal> conjunction(const CausalRule& r, const Formula& f, bool positive_only) {
    auto lits = f.as_literals();
    if (!lits) unsupported(r, "expected a conjunction of literals");
    if (positive_only)
        for (const auto& l : *lits)
            if (!l.positive) unsupported(r, "negated literal in an if part; use a complement fluent instead");
    return *lits;
}

void add_literals(std::vector<AspLiteral>& body, std::vector<Atom>& positive, std::vector<Atom>& others,
                  const std::vector<Literal>& ls, const AspTerm& time) {
    for (const auto& l : ls) {
        body.push_back(l.positive ? pos(h(l.atom, time)) : neg(h(l.atom, time)));
        (l.positive ? positive : others).push_back(l.atom);
    }
}

std::optional<Atom> complement_atom(const Signature& sig, const Atom& head) {
    for (const auto& c : sig.complements) {
        const Atom* mine = c.first.name == head.name ? &c.first : c.second.name == head.name ? &c.second : nullptr;
        if (!mine) continue;
        const Atom& other = mine == &c.first ? c.second : c.first;
        std::map<std::string, Term> rename;
        for (std::size_t i = 0; i < mine->args.size(); ++i) rename[mine->args[i].name] = head.args[i];
        Atom out{other.name, {}};
        for (const auto& a : other.args) out.args.push_back(a.is_variable() ? rename.at(a.name) : a);
        return out;
    }
    return std::nullopt;
}

}  // namespace

AspProgram compile_theory(const CausalTheory& t, std::set<std::string>* guard_sorts) {
    const Signature& sig = t.signature;
    std::vector<AspRule> state_rules;
    std::vector<AspRule> constraint_rules;
    std::vector<AspRule> step_rules;
    using K = CausalRule::Kind;

    for (const auto& r : t.rules) {
        AspRule out;
        std::vector<Atom> positive;
        std::vector<Atom> others;
        switch (r.kind) {
            case K::dynamic: {
                if (r.head.op != Formula::Op::atom) unsupported(r, "the head must be a single fluent atom");
                auto split = t.split_after(r);
                if (!split.action) unsupported(r, "the after part needs an action atom");
                out.head = h(r.head.atom, next_t());
                others.push_back(r.head.atom);
                out.body.push_back(pos(occurs(*split.action, step_t())));
                positive.push_back(*split.action);
                add_literals(out.body, positive, others, split.fluents, step_t());
                add_literals(out.body, positive, others, conjunction(r, r.if_part, true), next_t());
                break;
            }
            case K::static_law:
                if (r.head.op != Formula::Op::atom) unsupported(r, "the head must be a single fluent atom");
                out.head = h(r.head.atom, step_t());
                others.push_back(r.head.atom);
                add_literals(out.body, positive, others, conjunction(r, r.if_part, true), step_t());
                break;
            case K::inertial: {
                const Atom& f = r.head.atom;
                out.head = h(f, next_t());
                out.body.push_back(pos(h(f, step_t())));
                positive.push_back(f);
                if (auto c = complement_atom(sig, f)) {
                    out.body.push_back(neg(h(*c, next_t())));
                    others.push_back(*c);
                }
                break;
            }
            case K::nonexecutable: {
                auto split = t.split_after(r);
                if (!split.action) unsupported(r, "missing action atom");
                out.body.push_back(pos(occurs(*split.action, step_t())));
                positive.push_back(*split.action);
                add_literals(out.body, positive, others, split.fluents, step_t());
                break;
            }
            case K::constraint:
                add_literals(out.body, positive, others, conjunction(r, r.if_part, false), step_t());
                break;
        }
        auto g = guards(sig, positive, others, guard_sorts);
        out.body.insert(out.body.end(), g.begin(), g.end());
        if (r.kind == K::static_law) state_rules.push_back(std::move(out));
        else if (r.kind == K::constraint) constraint_rules.push_back(std::move(out));
        else step_rules.push_back(std::move(out));
    }
    for (const auto& c : sig.complements) {
        AspRule out;
        out.body = {pos(h(c.first, step_t())), pos(h(c.second, step_t()))};
        auto g = guards(sig, {c.first, c.second}, {}, guard_sorts);
        out.body.insert(out.body.end(), g.begin(), g.end());
        constraint_rules.push_back(std::move(out));
    }

    AspProgram p;
    p.add(AspStatement::comment("action model"));
    p.add(AspStatement::program("state", {"t"}));
    for (auto& r : state_rules) p.add(std::move(r));
    for (auto& r : constraint_rules) p.add(std::move(r));
    p.add(AspStatement::program("step", {"t"}));
    for (auto& r : step_rules) p.add(std::move(r));
    return p;
}

AspProgram compile_initial_state(const EnvGraph& g, const CausalTheory& t, const std::set<std::string>& guard_sorts,
                                 std::vector<std::string>* warnings) {
    AspProgram p;
    p.add(AspStatement::comment("initial state"));
    p.add(AspStatement::program("base"));
    for (const auto& fact : to_facts(g)) p.add(AspRule{parse_asp_term(fact), std::nullopt, {}});
    for (const auto& s : guard_sorts) {
        const Sort sort = t.signature.sort(s);
        for (const auto& [id, e] : g.entities())
            if (sort.admits(e.category))
                p.add(AspRule{AspTerm::function("in_sort", {AspTerm::number(id), AspTerm::symbol(s)}), std::nullopt, {}});
    }
    const GroundCausalTheory gt = ground_theory(t, g, 0);
    for (const auto& a : gt.actions)
        p.add(AspRule{AspTerm::function("action_of", {conv(a.args.at(0)), action_term(a)}), std::nullopt, {}});
    for (const auto& f : gt.initial) p.add(AspRule{h(f, AspTerm::number(0)), std::nullopt, {}});

    if (warnings) {
        std::set<std::string> read;
        for (const auto& o : t.observations)
            for (const auto& b : o.graph_body)
                if (b.name == "state" && b.args.size() == 2 && b.args[1].kind == Term::Kind::symbol)
                    read.insert(b.args[1].name);
        for (const auto& [id, e] : g.entities())
            for (const auto& s : e.states)
                if (!read.count(s))
                    warnings->push_back("state '" + s + "' of entity " + std::to_string(id) +
                                        " has no fluent mapping; skipped");
        warnings->insert(warnings->end(), gt.warnings.begin(), gt.warnings.end());
    }
    return p;
}

void validate_skeleton(const SkeletonPlan& p, const Signature& sig) {
    for (const auto& e : flatten_skeleton(p, sig)) {
        if (e.kind == SkeletonPlan::Kind::action) {
            const Schema* s = sig.action(e.name);
            if (!s) throw ValidationError("skeleton references undeclared action '" + e.name + "'");
            if (e.args.size() + 1 > s->arity())
                throw ValidationError("skeleton step " + e.to_string() + " has too many arguments for '" + e.name +
                                      "'");
            for (const auto& a : e.args)
                if (a.is_variable())
                    throw ValidationError("skeleton step " + e.to_string() + " uses a variable argument");
        } else {
            std::vector<Atom> atoms;
            e.spec.collect_atoms(atoms);
            for (const auto& a : atoms) {
                const Schema* s = sig.fluent(a.name);
                if (!s) throw ValidationError("skeleton references undeclared fluent '" + a.name + "'");
                if (s->arity() != a.args.size())
                    throw ValidationError("arity mismatch for fluent '" + a.name + "' in skeleton");
                for (const auto& arg : a.args)
                    if (arg.kind != Term::Kind::number)
                        throw ValidationError("fluent specification " + a.to_string() + " must name entity ids");
            }
        }
    }
}

AspProgram compile_skeleton(const SkeletonPlan& p, const CausalTheory& t, const EnvGraph& g) {
    validate_skeleton(p, t.signature);
    const auto elements = flatten_skeleton(p, t.signature);
    const auto filter = related_actions(t, g, p);
    const GroundCausalTheory gt = ground_theory(t, g, 0, filter);

    AspProgram out;
    out.add(AspStatement::comment("skeleton"));
    out.add(AspStatement::program("base"));
    std::set<AspTerm> related;
    for (const auto& a : gt.actions) related.insert(action_term(a));
    for (const auto& a : related) out.add(AspRule{AspTerm::function("related_action", {a}), std::nullopt, {}});
    auto reached = [](std::size_t k, AspTerm time) {
        return AspTerm::function("reached", {AspTerm::number(static_cast<long long>(k)), std::move(time)});
    };
    out.add(AspRule{reached(0, AspTerm::number(0)), std::nullopt, {}});

    out.add(AspStatement::program("step", {"t"}));
    AspRule choice;
    choice.choice = AspChoice{1, 1,
                              AspTerm::function("occurs", {AspTerm::variable("C"), AspTerm::variable("A"), step_t()}),
                              {pos(AspTerm::function("action_of", {AspTerm::variable("C"), AspTerm::variable("A")})),
                               pos(AspTerm::function("related_action", {AspTerm::variable("A")}))}};
    choice.body = {pos(AspTerm::function("is", {AspTerm::variable("C"), AspTerm::symbol("character")}))};
    out.add(std::move(choice));

    std::vector<AspRule> fluent_milestones;
    for (std::size_t k = 1; k <= elements.size(); ++k) {
        const auto& e = elements[k - 1];
        if (e.kind == SkeletonPlan::Kind::action) {
            const Schema* s = t.signature.action(e.name);
            AspRule r;
            r.head = reached(k, next_t());
            r.body.push_back(pos(reached(k - 1, step_t())));
            std::vector<AspTerm> args;
            std::vector<AspLiteral> typing;
            for (std::size_t i = 0; i + 1 < s->arity(); ++i) {
                if (i >= e.args.size()) {
                    args.push_back(AspTerm::variable("_"));
                } else if (e.args[i].kind == Term::Kind::number) {
                    args.push_back(AspTerm::number(e.args[i].value));
                } else {
                    const std::string v = "X" + std::to_string(i + 1);
                    args.push_back(AspTerm::variable(v));
                    typing.push_back(pos(AspTerm::function("is", {AspTerm::variable(v), conv(e.args[i])})));
                }
            }
            r.body.push_back(pos(AspTerm::function(
                "occurs", {AspTerm::variable("C"), AspTerm::function(e.name, std::move(args)), step_t()})));
            r.body.insert(r.body.end(), typing.begin(), typing.end());
            out.add(std::move(r));
        } else {
            for (const auto& disjunct : e.spec.dnf()) {
                AspRule r;
                r.head = reached(k, step_t());
                r.body.push_back(pos(reached(k - 1, step_t())));
                for (const auto& l : disjunct)
                    r.body.push_back(l.positive ? pos(h(l.atom, step_t())) : neg(h(l.atom, step_t())));
                fluent_milestones.push_back(std::move(r));
            }
        }
    }
    for (std::size_t k = 1; k <= elements.size(); ++k)
        out.add(AspRule{reached(k, next_t()), std::nullopt, {pos(reached(k, step_t()))}});
    if (!fluent_milestones.empty()) {
        out.add(AspStatement::program("state", {"t"}));
        for (auto& r : fluent_milestones) out.add(std::move(r));
    }
    return out;
}

AspProgram compile_check(std::size_t milestones) {
    AspProgram p;
    p.add(AspStatement::comment("check"));
    p.add(AspStatement::program("check", {"t"}));
    p.add(AspStatement::external(AspTerm::function("query", {step_t()})));
    if (milestones > 0) {
        AspRule r;
        r.body = {pos(AspTerm::function("query", {step_t()})),
                  neg(AspTerm::function("reached",
                                        {AspTerm::number(static_cast<long long>(milestones)), step_t()}))};
        p.add(std::move(r));
    }
    return p;
}

AspProgram compile_program(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, int horizon,
                           std::vector<std::string>* warnings) {
    if (horizon < 1) throw ValidationError("horizon must be at least 1");
    AspProgram out;
    out.add(AspStatement::comment("declarations"));
    out.add(AspStatement::constant("horizon", AspTerm::number(horizon)));
    out.add(AspStatement::show("occurs", 3));
    out.add(AspStatement::blank());

    std::set<std::string> guard_sorts;
    out.append(compile_theory(t, &guard_sorts));
    out.add(AspStatement::blank());
    out.append(compile_initial_state(g, t, guard_sorts, warnings));
    out.add(AspStatement::blank());
    out.append(compile_skeleton(p, t, g));
    out.add(AspStatement::blank());
    out.append(compile_check(flatten_skeleton(p, t.signature).size()));
    return out;
}

}  // namespace aspplan
