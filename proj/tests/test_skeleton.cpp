#include <doctest.h>

#include "aspplan/planner.hpp"
#include "aspplan/refine_loop.hpp"
#include "aspplan/skeleton.hpp"
#include "support.hpp"

using namespace aspplan;
using aspplan::testing::Gen;

TEST_SUITE("skeleton") {
    TEST_CASE("json extraction tolerates prose and fences") {
        CHECK(extract_json_object("Sure!\n```json\n{\"a\": \"}\"}\n```") == std::string("{\"a\": \"}\"}"));
        CHECK(extract_json_object("{broken {\"x\": 1}") == std::string("{\"x\": 1}"));
        CHECK_FALSE(extract_json_object("no json here"));
    }

    TEST_CASE("plan lines") {
        const auto l = parse_plan_line(" [PutIn] <Clothes Pants> <washing_machine> ");
        REQUIRE(l);
        CHECK(l->verb == "putin");
        CHECK(l->targets == std::vector<std::string>{"clothes_pants", "washing_machine"});
        CHECK(l->to_string() == "[putin] <clothes_pants> <washing_machine>");
        CHECK_FALSE(parse_plan_line("walk to kitchen"));
        CHECK_FALSE(parse_plan_line("[walk] <>"));
    }

    TEST_CASE("verifier messages") {
        const VerbTable verbs = verb_table(verb_specs(aspplan::testing::household().signature));
        const ParsedResponse r =
            parse_llm_response(R"({"actions": ["[fly] <lamp>", "[grab]", "walk kitchen", "[walk] <kitchen>"]})");
        const VerifierReport rep = verify_response(r, verbs, {});
        REQUIRE(rep.errors.size() == 3);
        CHECK(rep.errors[0].message == "Unknown action \"[fly]\". Please use only the permissible actions.");
        CHECK(rep.errors[1].message == "Invalid argument number. Please check action format of \"grab\".");
        CHECK(rep.errors[2].code == "format");
        CHECK(parse_llm_response("nothing").report.errors[0].message == "response is not parseable JSON");
        CHECK(parse_llm_response("{\"plan\": []}").report.errors[0].code == "json");
    }

    TEST_CASE("skeleton json round trip") {
        const SkeletonPlan p = parse_skeleton_items("walk(laundry_room); putin(clothes_pants, washing_machine)");
        CHECK(load_skeleton_json(skeleton_json(p, "wash")) == p);
        CHECK_THROWS_AS(load_skeleton_json("{\"actions\": [\"oops\"]}"), ValidationError);
        CHECK(to_skeleton({{"switchon", {"5"}, ""}}).steps[0].args[0] == Term::number(5));
    }

    TEST_CASE("property: plan lines round trip") {
        Gen gen(3);
        const std::vector<std::string> words{"walk", "grab", "putin", "clothes_pants", "lamp", "x1", "a_b_c"};
        for (int i = 0; i < 300; ++i) {
            PlanLine l{gen.pick(words), {}, ""};
            for (int k = gen.uniform(0, 3); k > 0; --k) l.targets.push_back(gen.pick(words));
            const auto back = parse_plan_line(l.to_string());
            REQUIRE(back);
            CHECK(back->verb == l.verb);
            CHECK(back->targets == l.targets);
        }
    }

    TEST_CASE("satisfaction is letter-exact on the first action") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const SkeletonPlan p = parse_skeleton_items("walk(laundry_room); switchon(washing_machine)");
        const SolveResult r = solve(t, g, p);
        REQUIRE(r.status == SolveStatus::found);
        const auto w = satisfies_witness(*r.trajectory, p, t.signature, g);
        REQUIRE(w);
        CHECK(w->bindings.front().time == 0);
        CHECK(w->bindings.back().action.name == "switchon");
        CHECK(w->splits.back() == r.trajectory->horizon());
        const Trajectory& tr = *r.trajectory;
        CHECK_FALSE(satisfies(tr, parse_skeleton_items("switchon(washing_machine)"), t.signature, g));
        CHECK(satisfies(tr, SkeletonPlan::sequence(), t.signature, g));
    }

    TEST_CASE("step matching") {
        const auto& g = aspplan::testing::demo_home();
        const Atom a{"switchon", {Term::number(1), Term::number(5)}};
        CHECK(step_matches(SkeletonPlan::action("switchon", {Term::symbol("washing_machine")}), a, g));
        CHECK(step_matches(SkeletonPlan::action("switchon", {Term::number(5)}), a, g));
        CHECK(step_matches(SkeletonPlan::action("switchon"), a, g));
        CHECK_FALSE(step_matches(SkeletonPlan::action("switchon", {Term::symbol("lamp")}), a, g));
        CHECK_FALSE(step_matches(SkeletonPlan::action("plugin", {Term::number(5)}), a, g));
    }
}
