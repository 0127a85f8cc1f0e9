#include "aspplan/asp_syntax.hpp"

#include <algorithm>
#include <cctype>

#include "aspplan/text.hpp"

namespace aspplan {

bool AspTerm::is_ground() const {
    if (kind == Kind::variable) return false;
    for (const auto& a : args)
        if (!a.is_ground()) return false;
    return true;
}

std::strong_ordering AspTerm::operator<=>(const AspTerm& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = name <=> o.name; c != 0) return c;
    if (auto c = value <=> o.value; c != 0) return c;
    return std::lexicographical_compare_three_way(args.begin(), args.end(), o.args.begin(), o.args.end());
}

std::string AspTerm::to_string() const {
    switch (kind) {
        case Kind::symbol:
        case Kind::variable: return name;
        case Kind::number: return std::to_string(value);
        case Kind::function:
            return name + "(" + join(args, ", ", [](const AspTerm& t) { return t.to_string(); }) + ")";
        case Kind::sum: return args[0].to_string() + "+" + args[1].to_string();
    }
    return {};
}

std::string AspLiteral::to_string() const { return negated ? "not " + atom.to_string() : atom.to_string(); }

namespace {

std::string literals(const std::vector<AspLiteral>& ls) {
    return join(ls, ", ", [](const AspLiteral& l) { return l.to_string(); });
}

}  // namespace

std::string AspRule::to_string() const {
    std::string out;
    if (head) {
        out = head->to_string();
    } else if (choice) {
        out = std::to_string(choice->lower) + "{" + choice->element.to_string();
        if (!choice->condition.empty()) out += ": " + literals(choice->condition);
        out += "}" + std::to_string(choice->upper);
    }
    if (!body.empty()) out += (out.empty() ? ":- " : " :- ") + literals(body);
    else if (out.empty()) out = ":-";
    return out + ".";
}

AspStatement AspStatement::program(std::string name, std::vector<std::string> params) {
    AspStatement s;
    s.kind = Kind::program;
    s.name = std::move(name);
    s.params = std::move(params);
    return s;
}

AspStatement AspStatement::constant(std::string name, AspTerm value) {
    AspStatement s;
    s.kind = Kind::constant;
    s.name = std::move(name);
    s.term = std::move(value);
    return s;
}

AspStatement AspStatement::show(std::string predicate, int arity) {
    AspStatement s;
    s.kind = Kind::show;
    s.name = std::move(predicate);
    s.arity = arity;
    return s;
}

AspStatement AspStatement::external(AspTerm atom) {
    AspStatement s;
    s.kind = Kind::external;
    s.term = std::move(atom);
    return s;
}

AspStatement AspStatement::comment(std::string text) {
    AspStatement s;
    s.kind = Kind::comment;
    s.name = std::move(text);
    return s;
}

AspStatement AspStatement::blank() {
    AspStatement s;
    s.kind = Kind::blank;
    return s;
}

std::string AspStatement::to_string() const {
    switch (kind) {
        case Kind::rule: return rule.to_string();
        case Kind::program:
            return "#program " + name + (params.empty() ? "" : "(" + join(params, ", ") + ")") + ".";
        case Kind::constant: return "#const " + name + "=" + term.to_string() + ".";
        case Kind::show: return "#show " + name + "/" + std::to_string(arity) + ".";
        case Kind::external: return "#external " + term.to_string() + ".";
        case Kind::comment: return name.empty() ? "%" : "% " + name;
        case Kind::blank: return {};
    }
    return {};
}

void AspProgram::append(const AspProgram& other) {
    statements.insert(statements.end(), other.statements.begin(), other.statements.end());
}

std::string emit_text(const AspProgram& p) {
    std::string out;
    for (const auto& s : p.statements) {
        out += s.to_string();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Tok {
    enum class Kind { ident, variable, number, punct, directive, comment, blank, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 1;
    int column = 1;
};

std::vector<Tok> lex(std::string_view src) {
    std::vector<Tok> out;
    std::size_t pos = 0;
    int line = 1;
    std::size_t line_start = 0;
    auto col = [&] { return static_cast<int>(pos - line_start) + 1; };
    auto newline = [&] {
        ++pos;
        ++line;
        line_start = pos;
    };
    while (pos < src.size()) {
        if (pos == line_start) {
            std::size_t e = pos;
            while (e < src.size() && (src[e] == ' ' || src[e] == '\t' || src[e] == '\r')) ++e;
            if (e < src.size() && src[e] == '\n') {
                out.push_back({Tok::Kind::blank, {}, line, 1});
                pos = e;
                newline();
                continue;
            }
        }
        const char c = src[pos];
        if (c == '\n') {
            newline();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        Tok t;
        t.line = line;
        t.column = col();
        if (c == '%') {
            std::size_t e = src.find('\n', pos);
            if (e == std::string_view::npos) e = src.size();
            t.kind = Tok::Kind::comment;
            t.text = trim(src.substr(pos + 1, e - pos - 1));
            pos = e;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
            std::size_t e = pos + 1;
            while (e < src.size() && (std::isalnum(static_cast<unsigned char>(src[e])) || src[e] == '_')) ++e;
            t.text = std::string(src.substr(pos, e - pos));
            t.kind = c == '#' ? Tok::Kind::directive
                     : (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Kind::variable
                                                                                 : Tok::Kind::ident;
            pos = e;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t e = pos;
            while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
            t.kind = Tok::Kind::number;
            t.text = std::string(src.substr(pos, e - pos));
            pos = e;
        } else if (c == ':' && pos + 1 < src.size() && src[pos + 1] == '-') {
            t.kind = Tok::Kind::punct;
            t.text = ":-";
            pos += 2;
        } else if (std::string_view("(),.:{}+/=").find(c) != std::string_view::npos) {
            t.kind = Tok::Kind::punct;
            t.text = std::string(1, c);
            ++pos;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col());
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::Kind::end, {}, line, col()});
    return out;
}

class AspParser {
public:
    explicit AspParser(std::string_view text) : toks_(lex(text)) {}

    AspProgram program() {
        AspProgram p;
        while (peek().kind != Tok::Kind::end) p.add(statement());
        return p;
    }

    AspTerm term_only() {
        skip_layout();
        AspTerm t = term();
        skip_layout();
        expect_end();
        return t;
    }

    AspRule rule_only() {
        skip_layout();
        AspRule r = rule();
        skip_layout();
        expect_end();
        return r;
    }

private:
    const Tok& peek() const { return toks_[pos_]; }
    Tok next() { return toks_[pos_++]; }
    bool is(std::string_view punct) const { return peek().kind == Tok::Kind::punct && peek().text == punct; }

    [[noreturn]] void fail(const std::string& msg) const {
        const std::string found = peek().kind == Tok::Kind::end ? "end of input" : peek().text;
        throw ParseError(msg + " (found '" + found + "')", peek().line, peek().column);
    }

    void expect(std::string_view punct) {
        if (!is(punct)) fail("expected '" + std::string(punct) + "'");
        ++pos_;
    }

    void expect_end() {
        if (peek().kind != Tok::Kind::end) fail("unexpected trailing input");
    }

    void skip_layout() {
        while (peek().kind == Tok::Kind::blank || peek().kind == Tok::Kind::comment) ++pos_;
    }

    std::string ident() {
        if (peek().kind != Tok::Kind::ident) fail("expected an identifier");
        return next().text;
    }

    AspStatement statement() {
        switch (peek().kind) {
            case Tok::Kind::blank: ++pos_; return AspStatement::blank();
            case Tok::Kind::comment: return AspStatement::comment(next().text);
            case Tok::Kind::directive: return directive();
            default: return AspStatement::of(rule());
        }
    }

    AspStatement directive() {
        const Tok d = next();
        AspStatement s;
        if (d.text == "#program") {
            std::string name = ident();
            std::vector<std::string> params;
            if (is("(")) {
                ++pos_;
                params.push_back(ident());
                while (is(",")) {
                    ++pos_;
                    params.push_back(ident());
                }
                expect(")");
            }
            s = AspStatement::program(std::move(name), std::move(params));
        } else if (d.text == "#const") {
            std::string name = ident();
            expect("=");
            s = AspStatement::constant(std::move(name), term());
        } else if (d.text == "#show") {
            std::string name = ident();
            expect("/");
            if (peek().kind != Tok::Kind::number) fail("expected an arity");
            s = AspStatement::show(std::move(name), std::stoi(next().text));
        } else if (d.text == "#external") {
            s = AspStatement::external(term());
        } else {
            throw ParseError("unsupported directive " + d.text, d.line, d.column);
        }
        expect(".");
        return s;
    }

    AspRule rule() {
        AspRule r;
        if (peek().kind == Tok::Kind::number) {
            AspChoice c;
            c.lower = std::stoi(next().text);
            expect("{");
            c.element = term();
            if (is(":")) {
                ++pos_;
                c.condition = body();
            }
            expect("}");
            if (peek().kind != Tok::Kind::number) fail("expected an upper bound");
            c.upper = std::stoi(next().text);
            r.choice = std::move(c);
        } else if (!is(":-")) {
            r.head = term();
        }
        if (is(":-")) {
            ++pos_;
            if (!is(".")) r.body = body();
        }
        expect(".");
        return r;
    }

    std::vector<AspLiteral> body() {
        std::vector<AspLiteral> out{literal()};
        while (is(",")) {
            ++pos_;
            out.push_back(literal());
        }
        return out;
    }

    AspLiteral literal() {
        AspLiteral l;
        if (peek().kind == Tok::Kind::ident && peek().text == "not") {
            ++pos_;
            l.negated = true;
        }
        l.atom = term();
        return l;
    }

    AspTerm term() {
        AspTerm t = simple_term();
        while (is("+")) {
            ++pos_;
            t = AspTerm::sum(std::move(t), simple_term());
        }
        return t;
    }

    AspTerm simple_term() {
        switch (peek().kind) {
            case Tok::Kind::variable: return AspTerm::variable(next().text);
            case Tok::Kind::number: return AspTerm::number(std::stoll(next().text));
            case Tok::Kind::ident: {
                std::string name = next().text;
                if (!is("(")) return AspTerm::symbol(std::move(name));
                ++pos_;
                std::vector<AspTerm> args{term()};
                while (is(",")) {
                    ++pos_;
                    args.push_back(term());
                }
                expect(")");
                return AspTerm::function(std::move(name), std::move(args));
            }
            default: fail("expected a term");
        }
    }

    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

AspProgram parse_asp(std::string_view text) { return AspParser(text).program(); }

AspTerm parse_asp_term(std::string_view text) { return AspParser(text).term_only(); }

AspRule parse_asp_rule(std::string_view text) { return AspParser(text).rule_only(); }

}  // namespace aspplan
