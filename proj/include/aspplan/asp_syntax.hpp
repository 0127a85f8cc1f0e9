#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aspplan {

/// Term of the emitted ASP subset: constants, integers, variables,
/// function terms and the `t+1` arithmetic used for time steps.
struct AspTerm {
    enum class Kind { symbol, number, variable, function, sum };

    Kind kind = Kind::symbol;
    std::string name;
    long long value = 0;
    std::vector<AspTerm> args;  // function arguments; sum operands

    static AspTerm symbol(std::string n) { return {Kind::symbol, std::move(n), 0, {}}; }
    static AspTerm number(long long v) { return {Kind::number, {}, v, {}}; }
    static AspTerm variable(std::string n) { return {Kind::variable, std::move(n), 0, {}}; }
    static AspTerm function(std::string n, std::vector<AspTerm> args) {
        if (args.empty()) return symbol(std::move(n));
        return {Kind::function, std::move(n), 0, std::move(args)};
    }
    static AspTerm sum(AspTerm a, AspTerm b) { return {Kind::sum, {}, 0, {std::move(a), std::move(b)}}; }

    bool is_ground() const;
    std::string to_string() const;
    std::strong_ordering operator<=>(const AspTerm& o) const;
    bool operator==(const AspTerm& o) const { return (*this <=> o) == 0; }
};

struct AspLiteral {
    AspTerm atom;
    bool negated = false;

    std::string to_string() const;
    auto operator<=>(const AspLiteral&) const = default;
};

/// lower{element: condition}upper
struct AspChoice {
    int lower = 1;
    int upper = 1;
    AspTerm element;
    std::vector<AspLiteral> condition;

    bool operator==(const AspChoice&) const = default;
};

struct AspRule {
    std::optional<AspTerm> head;      // normal rule or fact
    std::optional<AspChoice> choice;  // choice rule
    std::vector<AspLiteral> body;     // neither head nor choice: constraint

    bool is_constraint() const { return !head && !choice; }
    std::string to_string() const;
    bool operator==(const AspRule&) const = default;
};

struct AspStatement {
    enum class Kind { rule, program, constant, show, external, comment, blank };

    Kind kind = Kind::rule;
    AspRule rule;
    std::string name;                 // program / constant / show predicate; comment text
    std::vector<std::string> params;  // program parameters
    AspTerm term;                     // constant value or external atom
    int arity = 0;                    // show

    static AspStatement of(AspRule r) {
        AspStatement s;
        s.rule = std::move(r);
        return s;
    }
    static AspStatement program(std::string name, std::vector<std::string> params = {});
    static AspStatement constant(std::string name, AspTerm value);
    static AspStatement show(std::string predicate, int arity);
    static AspStatement external(AspTerm atom);
    static AspStatement comment(std::string text);
    static AspStatement blank();

    std::string to_string() const;
    bool operator==(const AspStatement&) const = default;
};

struct AspProgram {
    std::vector<AspStatement> statements;

    void add(AspStatement s) { statements.push_back(std::move(s)); }
    void add(AspRule r) { statements.push_back(AspStatement::of(std::move(r))); }
    void append(const AspProgram& other);
    bool operator==(const AspProgram&) const = default;
};

/// One statement per line.
std::string emit_text(const AspProgram& p);

/// Parses the subset produced by emit_text. Throws ParseError.
AspProgram parse_asp(std::string_view text);
AspTerm parse_asp_term(std::string_view text);
AspRule parse_asp_rule(std::string_view text);

}  // namespace aspplan
