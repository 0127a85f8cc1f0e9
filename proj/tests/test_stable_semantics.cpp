#include <doctest.h>

#include "aspplan/stable_semantics.hpp"
#include "support.hpp"

using namespace aspplan;
using aspplan::testing::Gen;

TEST_SUITE("stable_semantics") {
    TEST_CASE("classic programs") {
        GroundProgram even;  // p :- not q. q :- not p.
        even.add_rule("p", {}, {"q"});
        even.add_rule("q", {}, {"p"});
        CHECK(answer_sets(even) == std::vector<AtomSet>{{"p"}, {"q"}});

        GroundProgram odd;  // p :- not p.
        odd.add_rule("p", {}, {"p"});
        CHECK(answer_sets(odd).empty());

        GroundProgram chain;
        chain.add_rule("a");
        chain.add_rule("b", {"a"});
        chain.add_rule("c", {"b"}, {"d"});
        CHECK(answer_sets(chain) == std::vector<AtomSet>{{"a", "b", "c"}});

        GroundProgram constrained = even;
        constrained.add_constraint({"p"});
        CHECK(answer_sets(constrained) == std::vector<AtomSet>{{"q"}});
    }

    TEST_CASE("reduct and minimal model") {
        GroundProgram p;
        p.add_rule("a", {}, {"b"});
        p.add_rule("b", {}, {"a"});
        p.add_rule("c", {"a"});
        const GroundProgram r = gl_reduct(p, {"a", "c"});
        CHECK(minimal_model(r) == AtomSet{"a", "c"});
        CHECK(is_model(p, {"a", "c"}));
        CHECK_FALSE(is_model(p, {"a"}));
        CHECK_THROWS(minimal_model(p));
    }

    TEST_CASE("bound is enforced") {
        GroundProgram p;
        for (int i = 0; i < 30; ++i) {
            const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
            p.add_rule(a, {}, {b});
            p.add_rule(b, {}, {a});
        }
        CHECK_THROWS_AS(answer_sets(p), UniverseTooLarge);
    }

    TEST_CASE("property: answer_sets agrees with naive enumeration and is stable") {
        Gen gen(7);
        for (int round = 0; round < 300; ++round) {
            const GroundProgram p = aspplan::testing::random_program(gen, gen.uniform(1, 7), gen.uniform(1, 10));
            const auto fast = answer_sets(p);
            CHECK(fast == answer_sets_naive(p));
            for (const auto& s : fast) {
                CHECK(minimal_model(gl_reduct(p, s)) == s);
                CHECK(is_model(p, s));
            }
        }
    }

    TEST_CASE("causal models") {
        // a ⇒ a (exogenous a), a ⇒ b, ¬a ⇒ ¬a, ¬b ⇒ ¬b
        PropCausalTheory t;
        t.atoms = {"a", "b"};
        t.rules = {{{{0, true}}, PropLiteral{0, true}},
                   {{{0, false}}, PropLiteral{0, false}},
                   {{{0, true}}, PropLiteral{1, true}},
                   {{{1, false}}, PropLiteral{1, false}}};
        CHECK(is_causal_model(t, {true, true}));
        CHECK(is_causal_model(t, {false, false}));
        CHECK_FALSE(is_causal_model(t, {true, false}));
        CHECK_FALSE(is_causal_model(t, {false, true}));
        CHECK(causal_reduction(t, {true, true}).size() == 2);
    }
}
