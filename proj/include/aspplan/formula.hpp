#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aspplan/env_graph.hpp"

namespace aspplan {

/// Argument of a symbolic atom: a variable (X), an entity id (7) or a
/// category symbol (clothes_pants, only meaningful in skeleton plans).
struct Term {
    enum class Kind { variable, number, symbol };

    Kind kind = Kind::symbol;
    std::string name;  // variable or symbol name
    EntityId value = 0;

    static Term variable(std::string n) { return {Kind::variable, std::move(n), 0}; }
    static Term number(EntityId v) { return {Kind::number, {}, v}; }
    static Term symbol(std::string n) { return {Kind::symbol, std::move(n), 0}; }

    bool is_variable() const { return kind == Kind::variable; }
    std::string to_string() const;
    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string name;
    std::vector<Term> args;

    std::string to_string() const;
    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool positive = true;

    std::string to_string() const;
    auto operator<=>(const Literal&) const = default;
};

/// Propositional formula over atoms.
struct Formula {
    enum class Op { truth, falsity, atom, negation, conjunction, disjunction };

    Op op = Op::truth;
    Atom atom;                      // Op::atom
    std::vector<Formula> children;  // negation: one child; and/or: two or more

    static Formula truth() { return {}; }
    static Formula falsity() { return {Op::falsity, {}, {}}; }
    static Formula of(Atom a) { return {Op::atom, std::move(a), {}}; }
    static Formula negate(Formula f);
    static Formula conjoin(std::vector<Formula> parts);
    static Formula disjoin(std::vector<Formula> parts);
    static Formula from_literals(const std::vector<Literal>& lits);

    bool is_truth() const { return op == Op::truth; }
    std::string to_string() const;
    bool operator==(const Formula&) const = default;

    /// Literal list when the formula is a conjunction of (possibly negated)
    /// atoms or ⊤; nullopt for any other shape.
    std::optional<std::vector<Literal>> as_literals() const;

    /// Disjunctive normal form: a list of literal conjunctions.
    std::vector<std::vector<Literal>> dnf() const;

    /// All atoms occurring in the formula, in order of appearance.
    void collect_atoms(std::vector<Atom>& out) const;
};

using Substitution = std::map<std::string, EntityId>;

Atom substitute(const Atom& a, const Substitution& s);

/// Evaluates a ground formula; `holds` decides each atom.
template <typename Pred>
bool evaluate(const Formula& f, Pred&& holds) {
    switch (f.op) {
        case Formula::Op::truth: return true;
        case Formula::Op::falsity: return false;
        case Formula::Op::atom: return holds(f.atom);
        case Formula::Op::negation: return !evaluate(f.children.front(), holds);
        case Formula::Op::conjunction:
            for (const auto& c : f.children)
                if (!evaluate(c, holds)) return false;
            return true;
        case Formula::Op::disjunction:
            for (const auto& c : f.children)
                if (evaluate(c, holds)) return true;
            return false;
    }
    return false;
}

}  // namespace aspplan
