#include "aspplan/formula.hpp"

#include "aspplan/text.hpp"

namespace aspplan {

std::string Term::to_string() const {
    switch (kind) {
        case Kind::variable:
        case Kind::symbol: return name;
        case Kind::number: return std::to_string(value);
    }
    return {};
}

std::string Atom::to_string() const {
    if (args.empty()) return name;
    return name + "(" + join(args, ", ", [](const Term& t) { return t.to_string(); }) + ")";
}

std::string Literal::to_string() const { return positive ? atom.to_string() : "not " + atom.to_string(); }

Formula Formula::negate(Formula f) {
    Formula out{Op::negation, {}, {}};
    out.children.push_back(std::move(f));
    return out;
}

Formula Formula::conjoin(std::vector<Formula> parts) {
    std::vector<Formula> kept;
    for (auto& p : parts) {
        if (p.op == Op::truth) continue;
        if (p.op == Op::conjunction) {
            for (auto& c : p.children) kept.push_back(std::move(c));
        } else {
            kept.push_back(std::move(p));
        }
    }
    if (kept.empty()) return truth();
    if (kept.size() == 1) return std::move(kept.front());
    return {Op::conjunction, {}, std::move(kept)};
}

Formula Formula::disjoin(std::vector<Formula> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    return {Op::disjunction, {}, std::move(parts)};
}

Formula Formula::from_literals(const std::vector<Literal>& lits) {
    std::vector<Formula> parts;
    for (const auto& l : lits) parts.push_back(l.positive ? of(l.atom) : negate(of(l.atom)));
    return conjoin(std::move(parts));
}

namespace {

std::string render(const Formula& f, bool nested) {
    switch (f.op) {
        case Formula::Op::truth: return "true";
        case Formula::Op::falsity: return "false";
        case Formula::Op::atom: return f.atom.to_string();
        case Formula::Op::negation: {
            const Formula& c = f.children.front();
            if (c.op == Formula::Op::conjunction || c.op == Formula::Op::disjunction)
                return "not (" + render(c, false) + ")";
            return "not " + render(c, true);
        }
        case Formula::Op::conjunction:
            return join(f.children, " & ", [](const Formula& c) { return render(c, true); });
        case Formula::Op::disjunction: {
            std::string s = join(f.children, " | ", [](const Formula& c) { return render(c, true); });
            return nested ? "(" + s + ")" : s;
        }
    }
    return {};
}

}  // namespace

std::string Formula::to_string() const { return render(*this, false); }

std::optional<std::vector<Literal>> Formula::as_literals() const {
    std::vector<Literal> out;
    auto add = [&out](const Formula& f) -> bool {
        if (f.op == Op::atom) {
            out.push_back({f.atom, true});
            return true;
        }
        if (f.op == Op::negation && f.children.front().op == Op::atom) {
            out.push_back({f.children.front().atom, false});
            return true;
        }
        return false;
    };
    switch (op) {
        case Op::truth: return out;
        case Op::conjunction:
            for (const auto& c : children)
                if (!add(c)) return std::nullopt;
            return out;
        default:
            if (add(*this)) return out;
            return std::nullopt;
    }
}

namespace {

using Dnf = std::vector<std::vector<Literal>>;

Dnf dnf_of(const Formula& f, bool positive) {
    using Op = Formula::Op;
    switch (f.op) {
        case Op::truth: return positive ? Dnf{{}} : Dnf{};
        case Op::falsity: return positive ? Dnf{} : Dnf{{}};
        case Op::atom: return Dnf{{Literal{f.atom, positive}}};
        case Op::negation: return dnf_of(f.children.front(), !positive);
        case Op::conjunction:
        case Op::disjunction: {
            // De Morgan: a negated conjunction distributes like a disjunction.
            const bool as_and = (f.op == Op::conjunction) == positive;
            if (!as_and) {
                Dnf out;
                for (const auto& c : f.children) {
                    Dnf part = dnf_of(c, positive);
                    out.insert(out.end(), part.begin(), part.end());
                }
                return out;
            }
            Dnf acc{{}};
            for (const auto& c : f.children) {
                Dnf part = dnf_of(c, positive);
                Dnf next;
                for (const auto& left : acc)
                    for (const auto& right : part) {
                        auto merged = left;
                        merged.insert(merged.end(), right.begin(), right.end());
                        next.push_back(std::move(merged));
                    }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

}  // namespace

std::vector<std::vector<Literal>> Formula::dnf() const { return dnf_of(*this, true); }

void Formula::collect_atoms(std::vector<Atom>& out) const {
    if (op == Op::atom) out.push_back(atom);
    for (const auto& c : children) c.collect_atoms(out);
}

Atom substitute(const Atom& a, const Substitution& s) {
    Atom out{a.name, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        if (t.is_variable()) {
            auto it = s.find(t.name);
            if (it != s.end()) {
                out.args.push_back(Term::number(it->second));
                continue;
            }
        }
        out.args.push_back(t);
    }
    return out;
}

}  // namespace aspplan
