#include <doctest.h>

#include <sstream>

#include "aspplan/asp_compiler.hpp"
#include "aspplan/asp_grounder.hpp"
#include "aspplan/asp_syntax.hpp"
#include "aspplan/planner.hpp"
#include "micro_instances.hpp"
#include "support.hpp"

using namespace aspplan;

namespace {

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line) return true;
    return false;
}

}  // namespace

TEST_SUITE("asp_compiler") {
    TEST_CASE("translation of household laws") {
        const std::string text = emit_text(compile_theory(aspplan::testing::household()));
        CHECK(has_line(text, "h(clean(O), t+1) :- occurs(C, wash(O), t)."));
        CHECK(has_line(text, ":- occurs(C, wash(O), t), h(unempty_lh(C), t), h(unempty_rh(C), t)."));
        CHECK(has_line(text, "h(unempty_lh(C), t) :- h(holds_lh(C, O), t)."));
        CHECK(has_line(text, "h(empty_lh(C), t+1) :- h(empty_lh(C), t), not h(unempty_lh(C), t+1)."));
        CHECK(has_line(text, "#program state(t)."));
        CHECK(has_line(text, "#program step(t)."));
    }

    TEST_CASE("skeleton milestones") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const SkeletonPlan p = parse_skeleton_items("walk(laundry_room); switchon(5)");
        const std::string text = emit_text(compile_skeleton(p, t, g));
        CHECK(has_line(text, "reached(0, 0)."));
        CHECK(text.find("reached(2, t+1) :- reached(1, t), occurs(C, switchon(5), t).") != std::string::npos);
        CHECK(has_line(emit_text(compile_check(2)), ":- query(t), not reached(2, t)."));
    }

    TEST_CASE("output is deterministic and reparses") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const SkeletonPlan p = parse_skeleton_items("walk(laundry_room); switchon(washing_machine)");
        const AspProgram a = compile_program(t, g, p, 6);
        CHECK(emit_text(a) == emit_text(compile_program(t, g, p, 6)));
        CHECK(emit_text(parse_asp(emit_text(a))) == emit_text(a));
    }

    TEST_CASE("skeleton validation") {
        const auto& sig = aspplan::testing::household().signature;
        CHECK_NOTHROW(validate_skeleton(parse_skeleton_items("putin(clothes_pants, washing_machine)"), sig));
        CHECK_THROWS_AS(validate_skeleton(parse_skeleton_items("fly(lamp)"), sig), ValidationError);
        CHECK_THROWS_AS(validate_skeleton(parse_skeleton_items("putin(a, b, c)"), sig), ValidationError);
        CHECK_THROWS_AS(validate_skeleton(parse_skeleton_items("holds(shiny(5))"), sig), ValidationError);
    }

    TEST_CASE("initial state warnings name unread states") {
        const auto& t = aspplan::testing::household();
        const EnvGraph g({{1, "character", {}}, {2, "lamp", {"sparkly", "off"}}}, {});
        std::vector<std::string> warnings;
        compile_initial_state(g, t, {}, &warnings);
        CHECK(std::count_if(warnings.begin(), warnings.end(), [](const std::string& w) {
                  return w.find("'sparkly'") != std::string::npos;
              }) == 1);
    }

    TEST_CASE("property: answer sets equal planner trajectories on every micro-instance") {
        for (const auto& m : aspplan::testing::micro_instances()) {
            CAPTURE(m.name);
            const CausalTheory t = parse_action_model(m.model);
            const EnvGraph g = aspplan::testing::graph_of(m);
            const SkeletonPlan p = aspplan::testing::skeleton_of(m);
            std::vector<Trajectory> a;
            for (const auto& s : answer_sets(ground_asp(compile_program(t, g, p, m.horizon))))
                a.push_back(trajectory_from_answer_set(s, m.horizon));
            std::sort(a.begin(), a.end(), [](const Trajectory& x, const Trajectory& y) { return x.precedes(y); });
            const auto b = solve_all(t, g, p, m.horizon);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].same_path(b[i]));
        }
    }
}
