#include "aspplan/trajectory.hpp"

#include <algorithm>
#include <map>

#include "aspplan/text.hpp"

namespace aspplan {

namespace {

Term term_of(const AspTerm& t) {
    switch (t.kind) {
        case AspTerm::Kind::number: return Term::number(t.value);
        case AspTerm::Kind::symbol: return Term::symbol(t.name);
        default: throw Error("expected a constant or an integer, found '" + t.to_string() + "'");
    }
}

}  // namespace

Atom atom_from_term(const AspTerm& t) {
    if (t.kind == AspTerm::Kind::symbol) return Atom{t.name, {}};
    if (t.kind != AspTerm::Kind::function) throw Error("expected an atom, found '" + t.to_string() + "'");
    Atom a{t.name, {}};
    for (const auto& arg : t.args) a.args.push_back(term_of(arg));
    return a;
}

std::string occurs_text(const Atom& action, int time) {
    std::vector<Term> objects(action.args.begin() + 1, action.args.end());
    const std::string verb = objects.empty() ? action.name : Atom{action.name, objects}.to_string();
    return "occurs(" + action.args.at(0).to_string() + ", " + verb + ", " + std::to_string(time) + ")";
}

Atom action_from_occurs(const AspTerm& occurs, int& time) {
    if (occurs.kind != AspTerm::Kind::function || occurs.name != "occurs" || occurs.args.size() != 3 ||
        occurs.args[2].kind != AspTerm::Kind::number)
        throw Error("expected occurs(C, A, t), found '" + occurs.to_string() + "'");
    Atom verb = atom_from_term(occurs.args[1]);
    Atom a{verb.name, {term_of(occurs.args[0])}};
    a.args.insert(a.args.end(), verb.args.begin(), verb.args.end());
    time = static_cast<int>(occurs.args[2].value);
    return a;
}

std::string plan_text(const std::vector<Atom>& actions) {
    std::string out;
    for (std::size_t t = 0; t < actions.size(); ++t) out += occurs_text(actions[t], static_cast<int>(t) + 1) + "\n";
    return out;
}

std::vector<Atom> parse_plan_text(std::string_view text) {
    std::map<int, Atom> by_time;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line[0] == '%') continue;
        if (line.back() == '.') line.pop_back();
        int time = 0;
        Atom a;
        try {
            a = action_from_occurs(parse_asp_term(line), time);
        } catch (const ParseError& e) {
            throw ParseError("bad plan line: " + line, line_no, e.column());
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no, 1);
        }
        if (time < 1) throw ParseError("plan times start at 1", line_no, 1);
        if (!by_time.emplace(time, std::move(a)).second)
            throw ParseError("two actions at time " + std::to_string(time), line_no, 1);
    }
    std::vector<Atom> out;
    int expected = 1;
    for (auto& [t, a] : by_time) {
        if (t != expected) throw ParseError("plan has no action at time " + std::to_string(expected), 1, 1);
        out.push_back(std::move(a));
        ++expected;
    }
    return out;
}

}  // namespace aspplan
