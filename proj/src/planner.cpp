#include "aspplan/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "aspplan/skeleton.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

namespace {

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, int i) { return (b[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U; }
void set_bit(Bits& b, int i) { b[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

struct Lit {
    int idx = -1;  // -1: not a ground fluent, never holds
    bool pos = true;
};

struct PosRule {
    int head = 0;
    std::vector<int> body;
};

struct DynLaw {
    int head = 0;
    std::vector<Lit> after;
    std::vector<int> body;
};

struct Check {
    std::vector<Lit> body;
    std::string text;
};

struct Inertia {
    int f = 0;
    int c = -1;
};

constexpr std::size_t kMaxContested = 20;

}  // namespace

struct TransitionSystem::Impl {
    GroundCausalTheory gt;
    std::map<Atom, int> fluent_index;
    std::map<Atom, int> action_index;
    std::size_t words = 1;
    std::vector<PosRule> statics;
    std::vector<std::vector<DynLaw>> dynamic;  // by action index
    std::vector<std::vector<Check>> nonexec;   // by action index
    std::vector<Check> constraints;            // constraint laws and complement pairs
    std::vector<Inertia> inertia;

    explicit Impl(const GroundCausalTheory& theory) : gt(theory) {
        for (std::size_t i = 0; i < gt.fluents.size(); ++i) fluent_index.emplace(gt.fluents[i], static_cast<int>(i));
        for (std::size_t i = 0; i < gt.actions.size(); ++i) action_index.emplace(gt.actions[i], static_cast<int>(i));
        words = std::max<std::size_t>(1, (gt.fluents.size() + 63) / 64);
        dynamic.resize(gt.actions.size());
        nonexec.resize(gt.actions.size());
        using K = CausalRule::Kind;
        for (const auto& law : gt.laws) {
            const std::string text = law.source ? law.source->to_string() : law.to_string();
            switch (law.kind) {
                case K::dynamic: {
                    auto a = action_index.find(*law.action);
                    if (a == action_index.end()) break;
                    dynamic[static_cast<std::size_t>(a->second)].push_back(
                        {fluent(*law.head), lits(law.after), positive(law.body, text)});
                    break;
                }
                case K::static_law: statics.push_back({fluent(*law.head), positive(law.body, text)}); break;
                case K::inertial: inertia.push_back({fluent(*law.head), law.complement ? lookup(*law.complement) : -1}); break;
                case K::nonexecutable: {
                    auto a = action_index.find(*law.action);
                    if (a != action_index.end()) nonexec[static_cast<std::size_t>(a->second)].push_back({lits(law.after), text});
                    break;
                }
                case K::constraint: constraints.push_back({lits(law.body), text}); break;
            }
        }
        for (const auto& [x, y] : gt.complements)
            constraints.push_back({{{lookup(x), true}, {lookup(y), true}},
                                   "complement " + x.to_string() + ", " + y.to_string()});
    }

    int lookup(const Atom& a) const {
        auto it = fluent_index.find(a);
        return it == fluent_index.end() ? -1 : it->second;
    }

    int fluent(const Atom& a) const {
        const int i = lookup(a);
        if (i < 0) throw Error("law head " + a.to_string() + " is not a ground fluent");
        return i;
    }

    std::vector<Lit> lits(const std::vector<Literal>& ls) const {
        std::vector<Lit> out;
        for (const auto& l : ls) out.push_back({lookup(l.atom), l.positive});
        return out;
    }

    std::vector<int> positive(const std::vector<Literal>& ls, const std::string& text) const {
        std::vector<int> out;
        for (const auto& l : ls) {
            if (!l.positive) throw ValidationError("negated literal in an if part is not supported: " + text);
            out.push_back(lookup(l.atom));
        }
        return out;
    }

    bool holds(const Bits& b, const Lit& l) const { return l.idx < 0 ? !l.pos : test(b, l.idx) == l.pos; }

    bool all(const Bits& b, const std::vector<Lit>& ls) const {
        return std::all_of(ls.begin(), ls.end(), [&](const Lit& l) { return holds(b, l); });
    }

    bool all(const Bits& b, const std::vector<int>& ps) const {
        return std::all_of(ps.begin(), ps.end(), [&](int i) { return i >= 0 && test(b, i); });
    }

    Bits empty() const { return Bits(words, 0); }

    Bits to_bits(const State& s) const {
        Bits b = empty();
        for (const auto& a : s) {
            const int i = lookup(a);
            if (i < 0) throw Error(a.to_string() + " is not a ground fluent of the theory");
            set_bit(b, i);
        }
        return b;
    }

    State to_state(const Bits& b) const {
        State s;
        for (std::size_t i = 0; i < gt.fluents.size(); ++i)
            if (test(b, static_cast<int>(i))) s.insert(gt.fluents[i]);
        return s;
    }

    Bits lfp(Bits m, const std::vector<PosRule>& extra) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto* rules : {&statics, &extra})
                for (const auto& r : *rules)
                    if (!test(m, r.head) && all(m, r.body)) {
                        set_bit(m, r.head);
                        changed = true;
                    }
        }
        return m;
    }

    std::optional<std::string> violated(const Bits& m) const {
        for (const auto& c : constraints)
            if (all(m, c.body)) return c.text;
        return std::nullopt;
    }

    std::optional<Bits> initial(std::string* reason) const {
        Bits m = empty();
        for (const auto& a : gt.initial) set_bit(m, fluent(a));
        m = lfp(std::move(m), {});
        if (auto v = violated(m)) {
            if (reason) *reason = "initial state violates " + *v;
            return std::nullopt;
        }
        return m;
    }

    std::vector<Bits> successors(const Bits& s, int a, std::string* reason) const {
        const auto ai = static_cast<std::size_t>(a);
        for (const auto& c : nonexec[ai])
            if (all(s, c.body)) {
                if (reason) *reason = "nonexecutable: " + c.text;
                return {};
            }
        std::vector<PosRule> active;
        for (const auto& d : dynamic[ai])
            if (all(s, d.after)) active.push_back({d.head, d.body});

        const Bits forced = lfp(empty(), active);
        Bits carried = empty();
        for (const auto& in : inertia)
            if (test(s, in.f)) set_bit(carried, in.f);
        const Bits possible = lfp(carried, active);

        Bits certain = empty();
        std::vector<const Inertia*> contested;
        for (const auto& in : inertia) {
            if (!test(s, in.f)) continue;
            if (in.c < 0 || !test(possible, in.c)) set_bit(certain, in.f);
            else if (!test(forced, in.c)) contested.push_back(&in);
        }
        if (contested.size() > kMaxContested)
            throw Error("too many contested inertial fluents (" + std::to_string(contested.size()) + ")");

        std::vector<Bits> out;
        std::string why = "no stable successor";
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << contested.size()); ++mask) {
            Bits facts = certain;
            for (std::size_t i = 0; i < contested.size(); ++i)
                if (mask >> i & 1U) set_bit(facts, contested[i]->f);
            const Bits m = lfp(std::move(facts), active);
            bool stable = true;
            for (std::size_t i = 0; i < contested.size() && stable; ++i)
                stable = test(m, contested[i]->c) != static_cast<bool>(mask >> i & 1U);
            if (!stable) continue;
            if (auto v = violated(m)) {
                why = "violates " + *v;
                continue;
            }
            out.push_back(m);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.empty() && reason) *reason = why;
        return out;
    }
};

TransitionSystem::TransitionSystem(const GroundCausalTheory& gt) : impl_(std::make_unique<Impl>(gt)) {}
TransitionSystem::~TransitionSystem() = default;
TransitionSystem::TransitionSystem(TransitionSystem&&) noexcept = default;

const GroundCausalTheory& TransitionSystem::theory() const { return impl_->gt; }

std::optional<State> TransitionSystem::initial_state(std::string* reason) const {
    auto b = impl_->initial(reason);
    if (!b) return std::nullopt;
    return impl_->to_state(*b);
}

TransitionResult TransitionSystem::step(const State& s, const Atom& action) const {
    TransitionResult r;
    auto it = impl_->action_index.find(action);
    if (it == impl_->action_index.end()) {
        r.reason = action.to_string() + " is not an action of the theory";
        return r;
    }
    for (const auto& b : impl_->successors(impl_->to_bits(s), it->second, &r.reason))
        r.successors.push_back(impl_->to_state(b));
    return r;
}

std::optional<std::string> TransitionSystem::violation(const State& s) const {
    return impl_->violated(impl_->to_bits(s));
}

TransitionResult transition(const GroundCausalTheory& gt, const State& s, const Atom& action) {
    return TransitionSystem(gt).step(s, action);
}

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::found: return "found";
        case SolveStatus::none: return "none";
        case SolveStatus::unknown: return "unknown";
    }
    return {};
}

std::optional<Trajectory> replay(const TransitionSystem& ts, const std::vector<Atom>& actions, std::string* reason) {
    Trajectory tr;
    auto s0 = ts.initial_state(reason);
    if (!s0) return std::nullopt;
    tr.states.push_back(*s0);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto r = ts.step(tr.states.back(), actions[i]);
        if (!r.applicable()) {
            if (reason) *reason = "step " + std::to_string(i + 1) + " " + actions[i].to_string() + ": " + r.reason;
            return std::nullopt;
        }
        tr.actions.push_back(actions[i]);
        tr.states.push_back(r.successors.front());
    }
    return tr;
}

namespace {

// Skeleton progress: the number of leading skeleton elements already met.
struct Search {
    TransitionSystem::Impl impl;
    const Signature& sig;
    const EnvGraph& g;
    const SkeletonPlan& plan;
    std::vector<SkeletonPlan> elems;
    std::vector<std::vector<bool>> matches;  // action element × action index
    std::vector<int> need;                   // action elements from k on

    Search(const GroundCausalTheory& gt, const Signature& s, const EnvGraph& graph, const SkeletonPlan& p)
        : impl(gt), sig(s), g(graph), plan(p), elems(flatten_skeleton(p, s)) {
        const std::size_t m = elems.size();
        matches.resize(m);
        need.assign(m + 1, 0);
        for (std::size_t k = 0; k < m; ++k) {
            if (elems[k].kind != SkeletonPlan::Kind::action) continue;
            for (const auto& a : impl.gt.actions) matches[k].push_back(step_matches(elems[k], a, g));
        }
        for (std::size_t k = m; k-- > 0;)
            need[k] = need[k + 1] + (elems[k].kind == SkeletonPlan::Kind::action ? 1 : 0);
    }

    int m() const { return static_cast<int>(elems.size()); }

    // After the first step, a nonempty skeleton must have met its first element.
    bool stalled(int k) const { return k == 0 && m() > 0; }

    bool spec_holds(const SkeletonPlan& e, const Bits& b) const {
        return evaluate(e.spec, [&](const Atom& a) {
            const int i = impl.lookup(a);
            return i >= 0 && test(b, i);
        });
    }

    int close(int k, const Bits& b) const {
        while (k < m() && elems[static_cast<std::size_t>(k)].kind == SkeletonPlan::Kind::fluent &&
               spec_holds(elems[static_cast<std::size_t>(k)], b))
            ++k;
        return k;
    }

    int advance(int k, int a) const {
        const auto ku = static_cast<std::size_t>(k);
        if (k < m() && elems[ku].kind == SkeletonPlan::Kind::action && matches[ku][static_cast<std::size_t>(a)]) return k + 1;
        return k;
    }

    Trajectory finish(const std::vector<Bits>& states, const std::vector<int>& actions) const {
        Trajectory tr;
        for (const auto& b : states) tr.states.push_back(impl.to_state(b));
        for (int a : actions) tr.actions.push_back(impl.gt.actions[static_cast<std::size_t>(a)]);
        auto w = satisfies_witness(tr, plan, sig, g);
        if (!w) throw Error("internal error: planner produced a trajectory that does not satisfy the skeleton");
        tr.bindings = std::move(w->bindings);
        return tr;
    }
};

GroundCausalTheory ground_for(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, int horizon,
                              const PlannerOptions& opts) {
    return ground_theory(t, g, std::max(horizon, 1), opts.prune ? related_actions(t, g, p) : nullptr);
}

}  // namespace

SolveResult solve(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, const PlannerOptions& opts) {
    if (opts.max_horizon < 1) throw Error("max_horizon must be at least 1");
    Search s(ground_for(t, g, p, opts.max_horizon, opts), t.signature, g, p);
    SolveResult res;
    auto s0 = s.impl.initial(&res.reason);
    if (!s0) return res;
    if (s.need[0] > opts.max_horizon) {
        res.reason = "skeleton needs more steps than max_horizon";
        return res;
    }

    struct Node {
        Bits state;
        int k;
        int parent;
        int action;
        int depth;
    };
    std::vector<Node> nodes{{*s0, s.close(0, *s0), -1, -1, 0}};
    if (nodes[0].k == s.m()) {
        res.status = SolveStatus::found;
        res.trajectory = s.finish({*s0}, {});
        return res;
    }
    std::set<std::pair<Bits, int>> seen{{nodes[0].state, nodes[0].k}};
    std::deque<int> queue{0};
    const int n_actions = static_cast<int>(s.impl.gt.actions.size());

    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        const Node cur = nodes[static_cast<std::size_t>(idx)];
        if (cur.depth >= opts.max_horizon) continue;
        if (++res.expanded > opts.node_budget) {
            res.status = SolveStatus::unknown;
            res.reason = "node budget of " + std::to_string(opts.node_budget) + " expansions exceeded";
            return res;
        }
        for (int a = 0; a < n_actions; ++a) {
            const int k1 = s.advance(cur.k, a);
            for (auto& next : s.impl.successors(cur.state, a, nullptr)) {
                const int k2 = s.close(k1, next);
                if (s.stalled(k2) || s.need[static_cast<std::size_t>(k2)] > opts.max_horizon - cur.depth - 1) continue;
                if (k2 == s.m()) {
                    std::vector<Bits> states{next};
                    std::vector<int> actions{a};
                    for (int i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
                        states.push_back(nodes[static_cast<std::size_t>(i)].state);
                        if (nodes[static_cast<std::size_t>(i)].action >= 0) actions.push_back(nodes[static_cast<std::size_t>(i)].action);
                    }
                    std::reverse(states.begin(), states.end());
                    std::reverse(actions.begin(), actions.end());
                    res.status = SolveStatus::found;
                    res.trajectory = s.finish(states, actions);
                    return res;
                }
                if (!seen.emplace(next, k2).second) continue;
                nodes.push_back({std::move(next), k2, idx, a, cur.depth + 1});
                queue.push_back(static_cast<int>(nodes.size()) - 1);
            }
        }
    }
    res.reason = "no trajectory of at most " + std::to_string(opts.max_horizon) + " steps satisfies the skeleton";
    return res;
}

std::vector<Trajectory> solve_all(const CausalTheory& t, const EnvGraph& g, const SkeletonPlan& p, int horizon,
                                  const PlannerOptions& opts) {
    if (horizon < 0) throw Error("horizon must be nonnegative");
    Search s(ground_for(t, g, p, horizon, opts), t.signature, g, p);
    std::vector<Trajectory> out;
    auto s0 = s.impl.initial(nullptr);
    if (!s0) return out;

    std::set<std::tuple<Bits, int, int>> dead;
    std::vector<Bits> states{*s0};
    std::vector<int> actions;
    std::size_t expanded = 0;
    const int n_actions = static_cast<int>(s.impl.gt.actions.size());

    std::function<bool(int, int)> dfs = [&](int k, int remaining) -> bool {
        if (remaining == 0) {
            if (k != s.m()) return false;
            out.push_back(s.finish(states, actions));
            return true;
        }
        auto key = std::make_tuple(states.back(), k, remaining);
        if (dead.count(key)) return false;
        if (++expanded > opts.node_budget)
            throw BudgetExceeded("node budget of " + std::to_string(opts.node_budget) + " expansions exceeded");
        bool any = false;
        for (int a = 0; a < n_actions; ++a) {
            const int k1 = s.advance(k, a);
            for (auto& next : s.impl.successors(states.back(), a, nullptr)) {
                const int k2 = s.close(k1, next);
                if (s.stalled(k2) || s.need[static_cast<std::size_t>(k2)] > remaining - 1) continue;
                states.push_back(std::move(next));
                actions.push_back(a);
                any = dfs(k2, remaining - 1) || any;
                states.pop_back();
                actions.pop_back();
            }
        }
        if (!any) dead.insert(std::move(key));
        return any;
    };
    dfs(s.close(0, *s0), horizon);
    std::sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) { return a.precedes(b); });
    return out;
}

}  // namespace aspplan
