#include "aspplan/action_model.hpp"

#include <algorithm>

#include "aspplan/text.hpp"

namespace aspplan {

Sort Sort::intersect(const Sort& other) const {
    if (any) return other;
    if (other.any) return *this;
    Sort out;
    std::set_intersection(categories.begin(), categories.end(), other.categories.begin(), other.categories.end(),
                          std::inserter(out.categories, out.categories.end()));
    return out;
}

const Schema* Signature::fluent(std::string_view name) const {
    for (const auto& s : fluents)
        if (s.name == name) return &s;
    return nullptr;
}

const Schema* Signature::action(std::string_view name) const {
    for (const auto& s : actions)
        if (s.name == name) return &s;
    return nullptr;
}

Sort Signature::sort(std::string_view name) const {
    Sort s;
    if (name == "any") {
        s.any = true;
        return s;
    }
    auto it = sort_decls.find(std::string(name));
    if (it == sort_decls.end()) {
        s.categories.insert(std::string(name));
        return s;
    }
    for (const auto& c : it->second) {
        Sort sub = sort(c);
        if (sub.any) return sub;
        s.categories.insert(sub.categories.begin(), sub.categories.end());
    }
    return s;
}

std::optional<std::string> Signature::complement_of(std::string_view fluent) const {
    for (const auto& c : complements) {
        if (c.first.name == fluent) return c.second.name;
        if (c.second.name == fluent) return c.first.name;
    }
    return std::nullopt;
}

std::string_view to_string(CausalRule::Kind k) {
    switch (k) {
        case CausalRule::Kind::dynamic: return "dynamic";
        case CausalRule::Kind::static_law: return "static";
        case CausalRule::Kind::inertial: return "inertial";
        case CausalRule::Kind::nonexecutable: return "nonexecutable";
        case CausalRule::Kind::constraint: return "constraint";
    }
    return "?";
}

std::string CausalRule::to_string() const {
    switch (kind) {
        case Kind::dynamic: {
            std::string s = "caused " + head.to_string();
            if (!if_part.is_truth()) s += " if " + if_part.to_string();
            return s + " after " + after_part.to_string();
        }
        case Kind::static_law: {
            std::string s = "caused " + head.to_string();
            if (!if_part.is_truth()) s += " if " + if_part.to_string();
            return s;
        }
        case Kind::inertial: return "inertial " + head.to_string();
        case Kind::nonexecutable: {
            if (after_part.op != Formula::Op::conjunction) return "nonexecutable " + after_part.to_string();
            std::vector<Formula> rest(after_part.children.begin() + 1, after_part.children.end());
            return "nonexecutable " + after_part.children.front().to_string() + " if " +
                   Formula::conjoin(std::move(rest)).to_string();
        }
        case Kind::constraint: return "constraint " + if_part.to_string();
    }
    return {};
}

CausalTheory::ActionCondition CausalTheory::split_after(const CausalRule& r) const {
    ActionCondition out;
    auto lits = r.after_part.as_literals();
    if (!lits) throw ValidationError("line " + std::to_string(r.line) + ": unsupported formula shape in '" +
                                     r.to_string() + "'");
    for (auto& l : *lits) {
        if (signature.action(l.atom.name)) {
            if (!l.positive || out.action)
                throw ValidationError("line " + std::to_string(r.line) +
                                      ": the after part needs exactly one positive action atom");
            out.action = std::move(l.atom);
        } else {
            out.fluents.push_back(std::move(l));
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> CausalTheory::state_complements() const {
    auto state_symbol = [this](const std::string& fluent) -> std::optional<std::string> {
        for (const auto& o : observations) {
            if (o.fluent.name != fluent || o.fluent.args.size() != 1 || o.graph_body.size() != 1) continue;
            const Atom& g = o.graph_body.front();
            if (g.name == "state" && g.args[0] == o.fluent.args[0] && g.args[1].kind == Term::Kind::symbol)
                return g.args[1].name;
        }
        return std::nullopt;
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : signature.complements) {
        auto a = state_symbol(c.first.name);
        auto b = state_symbol(c.second.name);
        if (a && b) out.emplace_back(*a, *b);
    }
    return out;
}

std::map<std::string, std::size_t> CausalTheory::verb_arities() const {
    std::map<std::string, std::size_t> out;
    for (const auto& a : signature.actions) out[a.name] = a.arity() - 1;
    return out;
}

std::string SkeletonPlan::to_string() const {
    switch (kind) {
        case Kind::action: {
            if (args.empty()) return name;
            return name + "(" + join(args, ", ", [](const Term& t) { return t.to_string(); }) + ")";
        }
        case Kind::fluent: return "holds(" + spec.to_string() + ")";
        case Kind::subtask: return name;
        case Kind::sequence: return join(steps, "; ", [](const SkeletonPlan& s) { return s.to_string(); });
    }
    return {};
}

namespace {

std::string schema_text(const Schema& s) {
    if (s.sorts.empty()) return s.name;
    return s.name + "(" + join(s.sorts, ", ") + ")";
}

}  // namespace

std::string print_action_model(const CausalTheory& t) {
    const auto& sig = t.signature;
    std::string out;
    for (const auto& [name, cats] : sig.sort_decls) out += "sort " + name + " = " + join(cats, " | ") + ".\n";
    for (const auto& f : sig.fluents) out += "fluent " + schema_text(f) + ".\n";
    for (const auto& a : sig.actions) {
        out += "action " + schema_text(a);
        if (!a.description.empty()) out += " \"" + a.description + "\"";
        out += ".\n";
    }
    for (const auto& c : sig.complements)
        out += "complement " + c.first.to_string() + ", " + c.second.to_string() + ".\n";
    if (!sig.support_verbs.empty()) out += "support " + join(sig.support_verbs, ", ") + ".\n";
    for (const auto& [name, plan] : sig.subtasks) out += "subtask " + name + " = " + plan.to_string() + ".\n";
    for (const auto& o : t.observations) {
        out += "initially " + o.fluent.to_string();
        if (!o.graph_body.empty())
            out += " if " + join(o.graph_body, " & ", [](const Atom& a) { return a.to_string(); });
        out += ".\n";
    }
    for (const auto& r : t.rules) out += r.to_string() + ".\n";
    return out;
}

}  // namespace aspplan
