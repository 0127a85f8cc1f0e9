#include <doctest.h>

#include <filesystem>

#include "aspplan/metrics.hpp"
#include "aspplan/text.hpp"
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

TEST_SUITE("metrics") {
    TEST_CASE("gar values") {
        const Condition a = Condition::state(7, "clean"), b = Condition::state(5, "on");
        const ConditionSet si{Condition::state(7, "dirty")};
        CHECK(gar(si, {a, b}, {a, b}) == 1.0);
        CHECK(gar(si, {a, b}, si) == 0.0);
        CHECK(gar(si, {a, b}, {a}) == 0.5);
        CHECK(gar(si, si, {}) == 1.0);
        const Condition rel = Condition::relation("inside", 7, 5);
        CHECK(gar(si, {a, rel}, {a}) == 0.5);
        CHECK(gar(si, {a, rel}, {a}, true) == 1.0);
    }

    TEST_CASE("property: gar is bounded and monotone") {
        Gen gen(17);
        std::vector<Condition> pool;
        for (int i = 1; i <= 6; ++i) pool.push_back(Condition::state(i, i % 2 ? "on" : "clean"));
        for (int round = 0; round < 300; ++round) {
            ConditionSet si, sgt, sf;
            for (const auto& c : pool) {
                if (gen.coin(0.3)) si.insert(c);
                if (gen.coin(0.5)) sgt.insert(c);
                if (gen.coin(0.5)) sf.insert(c);
            }
            const double v = gar(si, sgt, sf);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            ConditionSet more = sf;
            more.insert(gen.pick(pool));
            CHECK(gar(si, sgt, more) >= v);
            CHECK(gar(si, sgt, sgt) == 1.0);
        }
    }

    TEST_CASE("execution stops at the first inapplicable step") {
        const auto& t = aspplan::testing::household();
        const auto& g = aspplan::testing::demo_home();
        const ExecResult ok = execute(g, t, {act("walk", {1, 2}), act("find", {1, 5})});
        CHECK(ok.executable);
        CHECK(ok.final_state.count(Condition::relation("in", 1, 2)));
        CHECK_FALSE(ok.final_state.count(Condition::relation("in", 1, 3)));
        const ExecResult bad = execute(g, t, {act("walk", {1, 2}), act("switchon", {1, 5}), act("find", {1, 5})});
        CHECK_FALSE(bad.executable);
        REQUIRE(bad.failed_step);
        CHECK(bad.failed_step->index == 1);
        CHECK(bad.final_state.count(Condition::relation("in", 1, 2)));
        CHECK_THROWS_AS(execute(g, t, {act("walk", {1, 99})}), Error);
    }

    TEST_CASE("goal specs") {
        const auto& g = aspplan::testing::demo_home();
        const GoalSpec s = load_goal_spec(
            R"({"task": "t", "add": [{"id": 7, "state": "clean"}, {"relation": "inside", "from": 7, "to": 5}],
                "remove": [{"id": 7, "state": "dirty"}]})",
            g);
        CHECK(s.task == "t");
        CHECK(s.s_gt.count(Condition::state(7, "clean")));
        CHECK_FALSE(s.s_gt.count(Condition::state(7, "dirty")));
        CHECK(s.s_initial.count(Condition::state(7, "dirty")));
        CHECK_THROWS(load_goal_spec(R"({"task": "t", "add": [{"id": 99, "state": "on"}]})", g));
    }

    TEST_CASE("batch evaluation") {
        const BatchReport rep = evaluate_batch(load_manifest(aspplan::testing::kData + "/tasks.json"));
        REQUIRE(rep.rows.size() == 10);
        CHECK(rep.exec_rate == 1.0);
        CHECK(rep.mean_gar == 1.0);
        CHECK(rep.csv().rfind("task,", 0) == 0);
        CHECK(rep.table().find("100.0%") != std::string::npos);

        const BatchReport empty = evaluate_batch({});
        CHECK_FALSE(empty.exec_rate);
        CHECK(empty.table().find("undefined") != std::string::npos);

        BatchTask broken{"broken", aspplan::testing::kData + "/scenes/missing.json",
                         aspplan::testing::kData + "/household.cp", aspplan::testing::kData + "/skeletons/wash_shirt.json",
                         "", aspplan::testing::kData + "/goals/wash_shirt.json"};
        const BatchReport one = evaluate_batch({broken});
        REQUIRE(one.rows.size() == 1);
        CHECK_FALSE(one.rows[0].error.empty());
        CHECK(one.exec_rate == 0.0);
    }

    TEST_CASE("manifest validation") {
        const auto dir = std::filesystem::temp_directory_path() / "aspplan_manifest_test";
        std::filesystem::create_directories(dir);
        const std::string path = (dir / "m.json").string();
        write_file(path, R"({"tasks": [{"name": "x", "scene": "s.json", "model": "m.cp", "goal": "g.json"}]})");
        CHECK_THROWS(load_manifest(path));
        write_file(path, R"({"tasks": [{"name": "x", "scene": "s.json", "model": "m.cp", "goal": "g.json", "plan": "p.txt"}]})");
        const auto tasks = load_manifest(path);
        REQUIRE(tasks.size() == 1);
        CHECK(tasks[0].scene == (dir / "s.json").string());
        std::filesystem::remove_all(dir);
    }
}
