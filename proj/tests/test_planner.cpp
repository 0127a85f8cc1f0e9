#include <doctest.h>

#include "aspplan/metrics.hpp"
#include "aspplan/planner.hpp"
#include "aspplan/skeleton.hpp"
#include "micro_instances.hpp"
#include "support.hpp"

using namespace aspplan;
using aspplan::testing::Gen;

namespace {

Atom act(std::string verb, std::vector<EntityId> ids) {
    Atom a{std::move(verb), {}};
    for (auto id : ids) a.args.push_back(Term::number(id));
    return a;
}

}  // namespace

TEST_SUITE("planner") {
    TEST_CASE("transitions of the lamp model") {
        const CausalTheory t = parse_action_model(aspplan::testing::kLampModel);
        const EnvGraph g({{1, "character", {}}, {2, "lamp", {"off"}}}, {});
        const TransitionSystem ts(ground_theory(t, g, 1));
        const auto s0 = ts.initial_state();
        REQUIRE(s0);
        CHECK(*s0 == State{act("off", {2})});
        const auto on = ts.step(*s0, act("switchon", {1, 2}));
        REQUIRE(on.successors.size() == 1);
        CHECK(on.successors[0] == State{act("on", {2})});
        const auto again = ts.step(on.successors[0], act("switchon", {1, 2}));
        CHECK_FALSE(again.applicable());
        CHECK_FALSE(again.reason.empty());
    }

    TEST_CASE("statuses") {
        const CausalTheory t = parse_action_model(aspplan::testing::kLampModel);
        const EnvGraph g({{1, "character", {}}, {2, "lamp", {"on"}}}, {});
        const SolveResult none = solve(t, g, parse_skeleton_items("switchon(lamp)"), {3, 1000, true});
        CHECK(none.status == SolveStatus::none);
        CHECK(to_string(none.status) == "none");
        const SolveResult unknown = solve(aspplan::testing::household(), aspplan::testing::demo_home(),
                                          load_skeleton_file(aspplan::testing::kData + "/skeletons/wash_clothes.json"),
                                          {40, 1, true});
        CHECK(unknown.status == SolveStatus::unknown);
        CHECK_THROWS_AS(solve_all(aspplan::testing::household(), aspplan::testing::demo_home(),
                                  parse_skeleton_items("walk(laundry_room); switchon(washing_machine)"), 12,
                                  {40, 5, true}),
                        BudgetExceeded);
    }

    TEST_CASE("wash clothes: plug in before switching on") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const SkeletonPlan p = load_skeleton_file(aspplan::testing::kData + "/skeletons/wash_clothes.json");
        const SolveResult r = solve(t, g, p);
        REQUIRE(r.status == SolveStatus::found);
        const auto& acts = r.trajectory->actions;
        const auto plug = std::find(acts.begin(), acts.end(), act("plugin", {1, 5}));
        const auto on = std::find(acts.begin(), acts.end(), act("switchon", {1, 5}));
        REQUIRE(plug != acts.end());
        REQUIRE(on != acts.end());
        CHECK(plug < on);
        CHECK(r.trajectory->bindings.size() == 4);
        CHECK(satisfies(*r.trajectory, p, t.signature, g));
        const auto pruned_off = solve(t, g, p, {40, 1'000'000, false});
        REQUIRE(pruned_off.status == SolveStatus::found);
        CHECK(pruned_off.trajectory->horizon() == r.trajectory->horizon());
    }

    TEST_CASE("property: solve is shortest and agrees with solve_all") {
        for (const auto& m : aspplan::testing::micro_instances()) {
            CAPTURE(m.name);
            const CausalTheory t = parse_action_model(m.model);
            const EnvGraph g = aspplan::testing::graph_of(m);
            const SkeletonPlan p = aspplan::testing::skeleton_of(m);
            const SolveResult r = solve(t, g, p, {4, 100'000, true});
            if (r.status != SolveStatus::found) {
                for (int h = 0; h <= 4; ++h) CHECK(solve_all(t, g, p, h).empty());
                continue;
            }
            const int n = r.trajectory->horizon();
            for (int h = 0; h < n; ++h) CHECK(solve_all(t, g, p, h).empty());
            const auto all = solve_all(t, g, p, n);
            CHECK(std::any_of(all.begin(), all.end(), [&](const Trajectory& x) { return x.same_path(*r.trajectory); }));
            for (const auto& x : all) CHECK(satisfies(x, p, t.signature, g));
        }
    }

    TEST_CASE("property: random walks stay consistent and replay") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const GroundCausalTheory gt = ground_theory(t, g, 1);
        const TransitionSystem ts(gt);
        Gen gen(13);
        for (int walk = 0; walk < 40; ++walk) {
            State s = *ts.initial_state();
            std::vector<Atom> taken;
            for (int step = 0; step < 12; ++step) {
                const Atom& a = gen.pick(gt.actions);
                const auto r = ts.step(s, a);
                if (!r.applicable()) continue;
                s = r.successors.front();
                CHECK_FALSE(ts.violation(s));
                taken.push_back(a);
            }
            const auto tr = replay(ts, taken);
            REQUIRE(tr);
            CHECK(tr->states.back() == s);
            const ExecResult ex = execute(g, t, taken);
            CHECK(ex.executable);
            CHECK(ex.final_fluents == s);
        }
    }
}
