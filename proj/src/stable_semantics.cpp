#include "aspplan/stable_semantics.hpp"

#include <algorithm>
#include <map>

#include "aspplan/text.hpp"

namespace aspplan {

namespace {

const std::string kFreshPrefix = "__false_";

// Least fixpoint of the rules selected by `keep`, by repeated forward passes.
template <typename Keep>
std::vector<char> fixpoint(const GroundProgram& p, Keep&& keep) {
    std::vector<char> m(p.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : p.rules()) {
            if (!r.head || m[static_cast<std::size_t>(*r.head)] || !keep(r)) continue;
            bool fires = true;
            for (int a : r.pos)
                if (!m[static_cast<std::size_t>(a)]) {
                    fires = false;
                    break;
                }
            if (fires) {
                m[static_cast<std::size_t>(*r.head)] = 1;
                changed = true;
            }
        }
    }
    return m;
}

// Least model of the reduct P^S, where only S's negated atoms matter.
std::vector<char> reduct_model(const GroundProgram& p, const std::vector<char>& s) {
    return fixpoint(p, [&s](const GroundRule& r) {
        for (int a : r.neg)
            if (s[static_cast<std::size_t>(a)]) return false;
        return true;
    });
}

void canonicalize(std::vector<AtomSet>& sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace

int GroundProgram::atom(const std::string& name) {
    auto [it, fresh] = index_.emplace(name, static_cast<int>(atoms_.size()));
    if (fresh) atoms_.push_back(name);
    return it->second;
}

std::optional<int> GroundProgram::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void GroundProgram::add_rule(const std::string& head, const std::vector<std::string>& pos,
                             const std::vector<std::string>& neg) {
    GroundRule r;
    r.head = atom(head);
    for (const auto& a : pos) r.pos.push_back(atom(a));
    for (const auto& a : neg) r.neg.push_back(atom(a));
    rules_.push_back(std::move(r));
}

void GroundProgram::add_constraint(const std::vector<std::string>& pos, const std::vector<std::string>& neg) {
    const std::string f = kFreshPrefix + std::to_string(fresh_++);
    std::vector<std::string> n = neg;
    n.push_back(f);
    add_rule(f, pos, n);
}

bool GroundProgram::is_auxiliary(int id) const { return name(id).rfind(kFreshPrefix, 0) == 0; }

AtomSet GroundProgram::to_names(const std::vector<char>& mask) const {
    AtomSet out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.insert(atoms_[i]);
    return out;
}

std::vector<char> GroundProgram::to_mask(const AtomSet& names) const {
    std::vector<char> m(atoms_.size(), 0);
    for (const auto& n : names) {
        auto id = find(n);
        if (id) m[static_cast<std::size_t>(*id)] = 1;
    }
    return m;
}

std::string GroundProgram::to_string() const {
    std::string out;
    for (const auto& r : rules_) {
        std::vector<std::string> body;
        for (int a : r.pos) body.push_back(name(a));
        for (int a : r.neg) body.push_back("not " + name(a));
        if (r.head) out += name(*r.head);
        if (!body.empty() || !r.head) out += (r.head ? " :- " : ":- ") + join(body, ", ");
        out += ".\n";
    }
    return out;
}

GroundProgram gl_reduct(const GroundProgram& p, const AtomSet& s) {
    GroundProgram out;
    for (std::size_t i = 0; i < p.size(); ++i) out.atom(p.name(static_cast<int>(i)));
    for (const auto& r : p.rules()) {
        bool deleted = false;
        for (int a : r.neg)
            if (s.count(p.name(a))) {
                deleted = true;
                break;
            }
        if (deleted) continue;
        out.add(GroundRule{r.head, r.pos, {}});
    }
    return out;
}

AtomSet minimal_model(const GroundProgram& p) {
    for (const auto& r : p.rules())
        if (!r.neg.empty()) throw Error("minimal_model expects a positive program");
    return p.to_names(fixpoint(p, [](const GroundRule&) { return true; }));
}

bool is_model(const GroundProgram& p, const AtomSet& s) {
    for (const auto& r : p.rules()) {
        bool body = true;
        for (int a : r.pos) body = body && s.count(p.name(a));
        for (int a : r.neg) body = body && !s.count(p.name(a));
        if (body && (!r.head || !s.count(p.name(*r.head)))) return false;
    }
    return true;
}

std::vector<AtomSet> answer_sets(const GroundProgram& p, std::size_t bound) {
    const std::size_t n = p.size();
    // Atoms true in every answer set: consequences of the negation-free rules.
    const auto forced = fixpoint(p, [](const GroundRule& r) { return r.neg.empty(); });
    // Atoms that can be true at all: consequences when negation is ignored.
    const auto possible = fixpoint(p, [](const GroundRule&) { return true; });

    std::vector<char> negated(n, 0);
    for (const auto& r : p.rules())
        for (int a : r.neg) negated[static_cast<std::size_t>(a)] = 1;

    std::vector<std::size_t> free;
    std::vector<char> base(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        if (!negated[a]) continue;
        if (forced[a]) {
            base[a] = 1;
        } else if (possible[a]) {
            free.push_back(a);
        }
    }
    if (free.size() > bound) throw UniverseTooLarge(free.size(), bound);

    std::vector<AtomSet> out;
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<char> guess = base;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1U) guess[free[i]] = 1;
        const auto m = reduct_model(p, guess);
        bool stable = true;
        for (std::size_t a = 0; a < n && stable; ++a)
            if (negated[a] && m[a] != guess[a]) stable = false;
        if (stable) out.push_back(p.to_names(m));
    }
    canonicalize(out);
    return out;
}

std::vector<AtomSet> answer_sets_naive(const GroundProgram& p, std::size_t bound) {
    std::vector<std::size_t> universe;
    for (std::size_t a = 0; a < p.size(); ++a)
        if (!p.is_auxiliary(static_cast<int>(a))) universe.push_back(a);
    if (universe.size() > bound) throw UniverseTooLarge(universe.size(), bound);

    std::vector<AtomSet> out;
    const std::uint64_t total = std::uint64_t{1} << universe.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<char> s(p.size(), 0);
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask >> i & 1U) s[universe[i]] = 1;
        const AtomSet names = p.to_names(s);
        if (minimal_model(gl_reduct(p, names)) == names) out.push_back(names);
    }
    canonicalize(out);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::optional<PropLiteral>> causal_reduction(const PropCausalTheory& t, const Interpretation& i) {
    std::vector<std::optional<PropLiteral>> heads;
    for (const auto& r : t.rules) {
        bool body = true;
        for (const auto& l : r.body)
            if (i[static_cast<std::size_t>(l.atom)] != l.positive) {
                body = false;
                break;
            }
        if (body) heads.push_back(r.head);
    }
    return heads;
}

bool is_causal_model(const PropCausalTheory& t, const Interpretation& i, std::size_t bound) {
    const std::size_t n = t.atoms.size();
    if (i.size() != n) throw Error("interpretation is not total over the theory's atoms");
    if (n > bound) throw UniverseTooLarge(n, bound);
    const auto heads = causal_reduction(t, i);
    for (const auto& h : heads)
        if (!h) return false;  // ⊥ has no models

    auto satisfies = [&heads](const Interpretation& j) {
        for (const auto& h : heads)
            if (j[static_cast<std::size_t>(h->atom)] != h->positive) return false;
        return true;
    };
    if (!satisfies(i)) return false;

    Interpretation j(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool same = true;
        for (std::size_t a = 0; a < n; ++a) {
            j[a] = (mask >> a & 1U) != 0;
            same = same && j[a] == i[a];
        }
        if (!same && satisfies(j)) return false;
    }
    return true;
}

PropCausalTheory to_propositional(const std::vector<TimedCausalRule>& rules, const std::vector<TimedAtom>& universe) {
    PropCausalTheory t;
    std::map<TimedAtom, int> index;
    for (const auto& a : universe) {
        index.emplace(a, static_cast<int>(t.atoms.size()));
        t.atoms.push_back(a.to_string());
    }
    auto lit = [&index](const TimedLiteral& l) {
        auto it = index.find(l.atom);
        if (it == index.end()) throw Error("atom " + l.atom.to_string() + " is outside the universe");
        return PropLiteral{it->second, l.positive};
    };
    for (const auto& r : rules) {
        PropCausalRule pr;
        for (const auto& l : r.body) pr.body.push_back(lit(l));
        if (r.head) pr.head = lit(*r.head);
        t.rules.push_back(std::move(pr));
    }
    return t;
}

Interpretation interpretation(const std::vector<TimedAtom>& universe, const std::set<TimedAtom>& true_atoms) {
    Interpretation i;
    i.reserve(universe.size());
    for (const auto& a : universe) i.push_back(true_atoms.count(a) != 0);
    return i;
}

}  // namespace aspplan
