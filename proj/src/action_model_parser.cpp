#include <cctype>
#include <functional>
#include <set>

#include "aspplan/action_model.hpp"
#include "aspplan/text.hpp"

namespace aspplan {

namespace {

struct Token {
    enum class Kind { ident, variable, number, string, punct, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::islower(static_cast<unsigned char>(c))) {
                t.kind = Token::Kind::ident;
                t.text = take_word();
            } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Token::Kind::variable;
                t.text = take_word();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Token::Kind::number;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
            } else if (c == '"') {
                t.kind = Token::Kind::string;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"') {
                    if (src_[pos_] == '\n') throw ParseError("unterminated string", t.line, t.column);
                    t.text += advance();
                }
                if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.column);
                advance();
            } else if (std::string_view("(),.=|&;:").find(c) != std::string_view::npos) {
                t.kind = Token::Kind::punct;
                t.text = std::string(1, advance());
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string take_word() {
        std::string w;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            w += advance();
        return w;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const std::set<std::string> kReserved = {"sort",     "fluent",        "action",     "complement", "support",
                                         "subtask",  "caused",        "if",         "after",      "inertial",
                                         "nonexecutable", "constraint", "initially", "not",       "true",
                                         "false",    "holds"};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).tokenize()) {}

    CausalTheory parse_theory() {
        CausalTheory t;
        while (!at_end()) statement(t);
        return t;
    }

    Formula formula_only() {
        Formula f = formula();
        expect_end();
        return f;
    }

    SkeletonPlan items_only() {
        SkeletonPlan p = items();
        expect_end();
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::end; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    bool is_punct(char c) const { return peek().kind == Token::Kind::punct && peek().text[0] == c; }
    bool is_keyword(std::string_view kw) const { return peek().kind == Token::Kind::ident && peek().text == kw; }

    Token next() { return toks_[pos_++]; }

    void expect_punct(char c) {
        if (!is_punct(c)) fail(std::string("expected '") + c + "' but found '" + describe(peek()) + "'");
        ++pos_;
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing input '" + describe(peek()) + "'");
    }

    static std::string describe(const Token& t) { return t.kind == Token::Kind::end ? "end of input" : t.text; }

    std::string ident(const char* what) {
        if (peek().kind != Token::Kind::ident) fail(std::string("expected ") + what + " but found '" + describe(peek()) + "'");
        if (kReserved.count(peek().text)) fail("reserved word '" + peek().text + "' used as " + what);
        return next().text;
    }

    void statement(CausalTheory& t) {
        const Token& kw = peek();
        if (kw.kind != Token::Kind::ident) fail("expected a statement keyword but found '" + describe(kw) + "'");
        const int line = kw.line;
        const std::string word = next().text;
        auto& sig = t.signature;

        if (word == "sort") {
            std::string name = ident("sort name");
            expect_punct('=');
            std::vector<std::string> cats{ident("category")};
            while (is_punct('|')) {
                ++pos_;
                cats.push_back(ident("category"));
            }
            if (!sig.sort_decls.emplace(name, cats).second) fail_at(line, "duplicate sort declaration '" + name + "'");
        } else if (word == "fluent" || word == "action") {
            Schema s;
            s.name = ident("schema name");
            if (is_punct('(')) {
                ++pos_;
                s.sorts.push_back(ident("sort"));
                while (is_punct(',')) {
                    ++pos_;
                    s.sorts.push_back(ident("sort"));
                }
                expect_punct(')');
            }
            if (word == "action" && peek().kind == Token::Kind::string) s.description = next().text;
            if (sig.fluent(s.name) || sig.action(s.name) || sig.is_subtask(s.name))
                fail_at(line, "duplicate declaration of '" + s.name + "'");
            (word == "fluent" ? sig.fluents : sig.actions).push_back(std::move(s));
        } else if (word == "complement") {
            ComplementPair c;
            c.first = atom();
            expect_punct(',');
            c.second = atom();
            sig.complements.push_back(std::move(c));
        } else if (word == "support") {
            sig.support_verbs.insert(ident("verb"));
            while (is_punct(',')) {
                ++pos_;
                sig.support_verbs.insert(ident("verb"));
            }
        } else if (word == "subtask") {
            std::string name = ident("subtask name");
            expect_punct('=');
            if (sig.fluent(name) || sig.action(name) || sig.is_subtask(name))
                fail_at(line, "duplicate declaration of '" + name + "'");
            sig.subtasks.emplace(name, items());
        } else if (word == "caused") {
            CausalRule r;
            r.line = line;
            r.head = formula();
            r.if_part = Formula::truth();
            if (is_keyword("if")) {
                ++pos_;
                r.if_part = formula();
            }
            if (is_keyword("after")) {
                ++pos_;
                r.after_part = formula();
                r.kind = CausalRule::Kind::dynamic;
            } else {
                r.kind = CausalRule::Kind::static_law;
            }
            t.rules.push_back(std::move(r));
        } else if (word == "inertial") {
            CausalRule r;
            r.line = line;
            r.kind = CausalRule::Kind::inertial;
            r.head = Formula::of(atom());
            t.rules.push_back(std::move(r));
        } else if (word == "nonexecutable") {
            CausalRule r;
            r.line = line;
            r.kind = CausalRule::Kind::nonexecutable;
            r.head = Formula::falsity();
            Formula act = Formula::of(atom());
            Formula cond = Formula::truth();
            if (is_keyword("if")) {
                ++pos_;
                cond = formula();
            }
            r.after_part = Formula::conjoin({std::move(act), std::move(cond)});
            t.rules.push_back(std::move(r));
        } else if (word == "constraint") {
            CausalRule r;
            r.line = line;
            r.kind = CausalRule::Kind::constraint;
            r.head = Formula::falsity();
            r.if_part = formula();
            t.rules.push_back(std::move(r));
        } else if (word == "initially") {
            Observation o;
            o.line = line;
            o.fluent = atom();
            if (is_keyword("if")) {
                ++pos_;
                o.graph_body.push_back(atom());
                while (is_punct('&')) {
                    ++pos_;
                    o.graph_body.push_back(atom());
                }
            }
            t.observations.push_back(std::move(o));
        } else {
            fail_at(line, "unknown statement keyword '" + word + "'");
        }
        expect_punct('.');
    }

    [[noreturn]] void fail_at(int line, const std::string& msg) const { throw ParseError(msg, line, 1); }

    Term term() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::variable: return Term::variable(next().text);
            case Token::Kind::number: return Term::number(std::stoll(next().text));
            case Token::Kind::ident:
                if (kReserved.count(t.text)) fail("reserved word '" + t.text + "' used as a term");
                return Term::symbol(next().text);
            default: fail("expected a term but found '" + describe(t) + "'");
        }
    }

    Atom atom() {
        Atom a;
        a.name = ident("atom name");
        if (is_punct('(')) {
            ++pos_;
            a.args.push_back(term());
            while (is_punct(',')) {
                ++pos_;
                a.args.push_back(term());
            }
            expect_punct(')');
        }
        return a;
    }

    Formula formula() {
        std::vector<Formula> parts{conjunction()};
        while (is_punct('|')) {
            ++pos_;
            parts.push_back(conjunction());
        }
        return Formula::disjoin(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (is_punct('&')) {
            ++pos_;
            parts.push_back(unary());
        }
        if (parts.size() == 1) return std::move(parts.front());
        return Formula::conjoin(std::move(parts));
    }

    Formula unary() {
        if (is_keyword("not")) {
            ++pos_;
            return Formula::negate(unary());
        }
        if (is_keyword("true")) {
            ++pos_;
            return Formula::truth();
        }
        if (is_keyword("false")) {
            ++pos_;
            return Formula::falsity();
        }
        if (is_punct('(')) {
            ++pos_;
            Formula f = formula();
            expect_punct(')');
            return f;
        }
        return Formula::of(atom());
    }

    SkeletonPlan item() {
        if (is_keyword("holds")) {
            ++pos_;
            expect_punct('(');
            Formula f = formula();
            expect_punct(')');
            return SkeletonPlan::fluent(std::move(f));
        }
        Atom a = atom();
        return SkeletonPlan::action(std::move(a.name), std::move(a.args));
    }

    SkeletonPlan items() {
        std::vector<SkeletonPlan> steps{item()};
        while (is_punct(';')) {
            ++pos_;
            steps.push_back(item());
        }
        return SkeletonPlan::sequence(std::move(steps));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Validation against the signature.

struct Validator {
    const CausalTheory& t;
    const Signature& sig = t.signature;

    [[noreturn]] static void fail(int line, const std::string& msg) {
        throw ValidationError("line " + std::to_string(line) + ": " + msg);
    }

    void check_schema_sorts(const Schema& s) const {
        for (const auto& so : s.sorts)
            if (so != "any" && !sig.sort_decls.count(so) && !is_identifier(so))
                throw ValidationError("bad sort '" + so + "' in schema " + s.name);
    }

    void check_args(const Atom& a, const Schema& s, int line, bool allow_symbols) const {
        if (a.args.size() != s.arity())
            fail(line, "arity mismatch for '" + a.name + "': expected " + std::to_string(s.arity()) + ", got " +
                           std::to_string(a.args.size()));
        for (const auto& term : a.args)
            if (term.kind == Term::Kind::symbol && !allow_symbols)
                fail(line, "constant '" + term.name + "' is not allowed in '" + a.to_string() + "'");
    }

    void fluent_atom(const Atom& a, int line, bool allow_symbols = false) const {
        const Schema* s = sig.fluent(a.name);
        if (!s) {
            if (sig.action(a.name)) fail(line, "action '" + a.name + "' used where a fluent is expected");
            fail(line, "undeclared fluent '" + a.name + "'");
        }
        check_args(a, *s, line, allow_symbols);
    }

    void fluent_formula(const Formula& f, int line) const {
        std::vector<Atom> atoms;
        f.collect_atoms(atoms);
        for (const auto& a : atoms) fluent_atom(a, line);
    }

    void action_atom(const Atom& a, int line) const {
        const Schema* s = sig.action(a.name);
        if (!s) fail(line, "undeclared action '" + a.name + "'");
        check_args(a, *s, line, false);
    }

    void after_formula(const Formula& f, int line) const {
        std::vector<Atom> atoms;
        f.collect_atoms(atoms);
        int actions = 0;
        for (const auto& a : atoms) {
            if (sig.action(a.name)) {
                action_atom(a, line);
                ++actions;
            } else {
                fluent_atom(a, line);
            }
        }
        if (actions > 1) fail(line, "at most one action atom is allowed in an after part");
    }

    void run() const {
        for (const auto& s : sig.fluents) check_schema_sorts(s);
        for (const auto& s : sig.actions) {
            check_schema_sorts(s);
            if (s.sorts.empty()) throw ValidationError("action '" + s.name + "' needs an agent argument");
        }
        for (const auto& [name, cats] : sig.sort_decls)
            if (sig.fluent(name) || sig.action(name))
                throw ValidationError("sort '" + name + "' clashes with a fluent or action name");
        for (const auto& c : sig.complements) {
            fluent_atom(c.first, 0);
            fluent_atom(c.second, 0);
            if (c.first.args != c.second.args)
                throw ValidationError("complement " + c.first.to_string() + ", " + c.second.to_string() +
                                      " must use identical argument lists");
            for (const auto& a : c.first.args)
                if (!a.is_variable())
                    throw ValidationError("complement arguments must be variables: " + c.first.to_string());
            if (c.first.name == c.second.name)
                throw ValidationError("fluent '" + c.first.name + "' cannot be its own complement");
        }
        std::set<std::string> seen_complement;
        for (const auto& c : sig.complements) {
            for (const auto* n : {&c.first.name, &c.second.name})
                if (!seen_complement.insert(*n).second)
                    throw ValidationError("fluent '" + *n + "' appears in more than one complement pair");
        }
        for (const auto& v : sig.support_verbs)
            if (!sig.action(v)) throw ValidationError("support verb '" + v + "' is not a declared action");

        for (const auto& r : t.rules) {
            switch (r.kind) {
                case CausalRule::Kind::dynamic:
                    fluent_formula(r.head, r.line);
                    fluent_formula(r.if_part, r.line);
                    after_formula(r.after_part, r.line);
                    break;
                case CausalRule::Kind::static_law:
                    fluent_formula(r.head, r.line);
                    fluent_formula(r.if_part, r.line);
                    break;
                case CausalRule::Kind::inertial:
                    fluent_atom(r.head.atom, r.line);
                    for (const auto& a : r.head.atom.args)
                        if (!a.is_variable()) fail(r.line, "inertial declarations take variables only");
                    break;
                case CausalRule::Kind::nonexecutable: {
                    const auto& act = r.after_part.op == Formula::Op::conjunction ? r.after_part.children.front()
                                                                                  : r.after_part;
                    action_atom(act.atom, r.line);
                    if (r.after_part.op == Formula::Op::conjunction) {
                        for (std::size_t i = 1; i < r.after_part.children.size(); ++i)
                            fluent_formula(r.after_part.children[i], r.line);
                    }
                    break;
                }
                case CausalRule::Kind::constraint: fluent_formula(r.if_part, r.line); break;
            }
        }
        for (const auto& o : t.observations) {
            fluent_atom(o.fluent, o.line);
            std::set<std::string> body_vars;
            for (const auto& g : o.graph_body) {
                const bool ok = (g.name == "is" && g.args.size() == 2) || (g.name == "state" && g.args.size() == 2) ||
                                (g.name == "relation" && g.args.size() == 3);
                if (!ok) fail(o.line, "initially bodies accept is/2, state/2 and relation/3, not '" + g.to_string() + "'");
                for (const auto& a : g.args)
                    if (a.is_variable()) body_vars.insert(a.name);
            }
            if (!o.graph_body.empty()) {
                for (const auto& a : o.fluent.args)
                    if (a.is_variable() && !body_vars.count(a.name))
                        fail(o.line, "variable " + a.name + " of " + o.fluent.to_string() + " is not bound by the body");
            }
        }
        for (const auto& [name, plan] : sig.subtasks) check_plan(plan, name);
        check_subtask_cycles();
    }

    void check_plan(const SkeletonPlan& p, const std::string& owner) const {
        switch (p.kind) {
            case SkeletonPlan::Kind::action:
                if (!sig.action(p.name) && !sig.is_subtask(p.name))
                    throw ValidationError("subtask '" + owner + "' references undeclared action '" + p.name + "'");
                break;
            case SkeletonPlan::Kind::fluent: {
                std::vector<Atom> atoms;
                p.spec.collect_atoms(atoms);
                for (const auto& a : atoms) fluent_atom(a, 0, true);
                break;
            }
            case SkeletonPlan::Kind::subtask:
                if (!sig.is_subtask(p.name)) throw ValidationError("unknown subtask '" + p.name + "'");
                break;
            case SkeletonPlan::Kind::sequence:
                for (const auto& s : p.steps) check_plan(s, owner);
                break;
        }
    }

    void check_subtask_cycles() const {
        std::map<std::string, int> color;
        std::function<void(const std::string&)> visit;
        std::function<void(const SkeletonPlan&)> walk = [&](const SkeletonPlan& p) {
            if (p.kind == SkeletonPlan::Kind::subtask) visit(p.name);
            for (const auto& s : p.steps) walk(s);
        };
        visit = [&](const std::string& n) {
            if (color[n] == 1) throw ValidationError("circular subtask reference through '" + n + "'");
            if (color[n] == 2) return;
            color[n] = 1;
            walk(sig.subtasks.at(n));
            color[n] = 2;
        };
        for (const auto& [n, _] : sig.subtasks) visit(n);
    }
};

// Items parsed inside subtask bodies are provisional action steps; an item
// naming a subtask without arguments becomes a subtask reference.
void resolve_items(SkeletonPlan& p, const Signature& sig) {
    if (p.kind == SkeletonPlan::Kind::action && p.args.empty() && sig.is_subtask(p.name) && !sig.action(p.name)) {
        p = SkeletonPlan::subtask(p.name);
        return;
    }
    for (auto& s : p.steps) resolve_items(s, sig);
}

}  // namespace

CausalTheory parse_action_model(std::string_view text) {
    CausalTheory t = Parser(text).parse_theory();
    for (auto& [name, plan] : t.signature.subtasks) resolve_items(plan, t.signature);
    Validator{t}.run();
    return t;
}

CausalTheory load_action_model(const std::string& path) { return parse_action_model(read_file(path)); }

Formula parse_formula(std::string_view text) { return Parser(text).formula_only(); }

SkeletonPlan parse_skeleton_items(std::string_view text) { return Parser(text).items_only(); }

}  // namespace aspplan
