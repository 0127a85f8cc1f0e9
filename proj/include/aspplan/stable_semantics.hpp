#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "aspplan/ground_theory.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

inline constexpr std::size_t kDefaultOracleBound = 22;

/// Thrown when brute-force enumeration would exceed the configured bound.
class UniverseTooLarge : public Error {
public:
    UniverseTooLarge(std::size_t size, std::size_t bound)
        : Error("atom universe too large for brute-force enumeration: " + std::to_string(size) +
                " atoms exceed the bound of " + std::to_string(bound)),
          size_(size), bound_(bound) {}

    std::size_t size() const { return size_; }
    std::size_t bound() const { return bound_; }

private:
    std::size_t size_;
    std::size_t bound_;
};

/// head :- pos, not neg. A missing head only appears in reducts of
/// constraints; programs store constraints expanded (F :- not F, body).
struct GroundRule {
    std::optional<int> head;
    std::vector<int> pos;
    std::vector<int> neg;
};

using AtomSet = std::set<std::string>;

/// A ground normal program over an interned atom universe.
class GroundProgram {
public:
    int atom(const std::string& name);  // interns
    std::optional<int> find(const std::string& name) const;
    const std::string& name(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return atoms_.size(); }

    void add_rule(const std::string& head, const std::vector<std::string>& pos = {},
                  const std::vector<std::string>& neg = {});
    /// ":- body" becomes "F :- not F, body" with a fresh atom F.
    void add_constraint(const std::vector<std::string>& pos, const std::vector<std::string>& neg = {});
    void add(GroundRule r) { rules_.push_back(std::move(r)); }

    const std::vector<GroundRule>& rules() const { return rules_; }
    bool is_auxiliary(int id) const;

    AtomSet to_names(const std::vector<char>& mask) const;
    std::vector<char> to_mask(const AtomSet& names) const;
    std::string to_string() const;

private:
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, int> index_;
    std::vector<GroundRule> rules_;
    int fresh_ = 0;
};

/// Rules with a negative atom in `s` are deleted; the rest lose their negative bodies.
GroundProgram gl_reduct(const GroundProgram& p, const AtomSet& s);

/// Least model of a positive program. Throws if `p` has negative bodies.
AtomSet minimal_model(const GroundProgram& p);

/// True when every rule is satisfied by `s`.
bool is_model(const GroundProgram& p, const AtomSet& s);

/// Answer sets in canonical order. Enumerates guesses over the atoms that
/// occur negated and are neither forced nor underivable; that residual must
/// not exceed `bound`.
std::vector<AtomSet> answer_sets(const GroundProgram& p, std::size_t bound = kDefaultOracleBound);

/// Textbook enumeration over every subset of the universe. Same result as
/// answer_sets; kept as an independent check.
std::vector<AtomSet> answer_sets_naive(const GroundProgram& p, std::size_t bound = kDefaultOracleBound);

// ---------------------------------------------------------------------------
// Causal theories over propositional atoms.

struct PropLiteral {
    int atom = 0;
    bool positive = true;
    auto operator<=>(const PropLiteral&) const = default;
};

/// body ⇒ head; an absent head is ⊥.
struct PropCausalRule {
    std::vector<PropLiteral> body;
    std::optional<PropLiteral> head;
};

struct PropCausalTheory {
    std::vector<std::string> atoms;
    std::vector<PropCausalRule> rules;
};

/// Total interpretation: value[i] is the truth of atoms[i].
using Interpretation = std::vector<bool>;

/// Heads of the rules whose bodies `i` satisfies (⊥ as nullopt).
std::vector<std::optional<PropLiteral>> causal_reduction(const PropCausalTheory& t, const Interpretation& i);

/// I is a causal model iff it is the unique model of T^I; uniqueness is
/// decided by enumerating every interpretation of the universe.
bool is_causal_model(const PropCausalTheory& t, const Interpretation& i, std::size_t bound = kDefaultOracleBound);

/// Indexes time-stamped rules over the given universe.
PropCausalTheory to_propositional(const std::vector<TimedCausalRule>& rules, const std::vector<TimedAtom>& universe);

/// Interpretation with exactly `true_atoms` true.
Interpretation interpretation(const std::vector<TimedAtom>& universe, const std::set<TimedAtom>& true_atoms);

}  // namespace aspplan
