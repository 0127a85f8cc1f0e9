#include <doctest.h>

#include "aspplan/refine_loop.hpp"
#include "support.hpp"

using namespace aspplan;

namespace {

PromptContext context() {
    PromptContext ctx;
    ctx.task = "wash clothes";
    ctx.verbs = verb_specs(aspplan::testing::household().signature);
    ctx.categories = {"clothes_pants", "detergent", "washing_machine"};
    ctx.scenes = {"laundry_room"};
    return ctx;
}

const std::string kBad = R"({"actions": ["[fly] <washing_machine>"]})";
const std::string kGood = R"({"actions": ["[walk] <laundry_room>", "[switchon] <washing_machine>"]})";

}  // namespace

TEST_SUITE("refine_loop") {
    TEST_CASE("verb specs") {
        const auto specs = verb_specs(aspplan::testing::household().signature);
        REQUIRE(specs.size() == 9);
        CHECK(specs[0].verb == "walk");
        CHECK(specs[5].arity == 2);
        CHECK(verb_table(specs).at("putin") == 2);
    }

    TEST_CASE("prompt structure") {
        const PromptContext ctx = context();
        const std::string p = build_prompt(ctx);
        CHECK(p.rfind("SYSTEM:\nYou serve as an AI task planner.", 0) == 0);
        CHECK(p.find("- [putin] <arg1> <arg2>: Put 'arg1' inside 'arg2'.") != std::string::npos);
        CHECK(p.find("Permissible Scenes: laundry_room") != std::string::npos);
        CHECK(p.find("Permissible Objects: clothes_pants, detergent, washing_machine") != std::string::npos);
        CHECK(p.find("USER:\nThe goal is to \"wash clothes\".") != std::string::npos);
        const ParsedResponse parsed = parse_llm_response(kBad);
        const VerifierReport rep = verify_response(parsed, verb_table(ctx.verbs), {});
        const std::string rev = build_prompt(ctx, &kBad, &rep);
        CHECK(rev.rfind(p, 0) == 0);
        CHECK(rev.find("ASSISTANT:\n" + kBad) != std::string::npos);
        CHECK(rev.find("Revise your plan. Your plan above failed.\nBecause: Unknown action \"[fly]\".") !=
              std::string::npos);
    }

    TEST_CASE("valid first response needs no revision") {
        ScriptedClient client({kGood});
        const LoopResult r = run_refine(context(), client, TrigramEmbedder{}, 3);
        CHECK(r.trace.revisions == 0);
        CHECK(r.trace.valid);
        CHECK(r.plan.steps.size() == 2);
        CHECK(client.calls() == 1);
    }

    TEST_CASE("one revision after an invalid response") {
        ScriptedClient client({kBad, kGood});
        const LoopResult r = run_refine(context(), client, TrigramEmbedder{}, 3);
        CHECK(r.trace.revisions == 1);
        CHECK(r.trace.valid);
        REQUIRE(client.prompts().size() == 2);
        CHECK(client.prompts()[1].find("Because: Unknown action") != std::string::npos);
        CHECK(r.trace.iterations.size() == 2);
        CHECK(r.trace.to_json().find("\"revisions\"") != std::string::npos);
    }

    TEST_CASE("exhausted revisions stay invalid") {
        for (int k = 1; k <= 4; ++k) {
            ScriptedClient client(std::vector<std::string>(static_cast<std::size_t>(k) + 1, kBad));
            const LoopResult r = run_refine(context(), client, TrigramEmbedder{}, k);
            CHECK(r.trace.revisions == k);
            CHECK_FALSE(r.trace.valid);
            CHECK(client.calls() == static_cast<std::size_t>(k) + 1);
        }
    }

    TEST_CASE("unparseable responses") {
        ScriptedClient client({"no", "still no"});
        CHECK_THROWS_AS(run_refine(context(), client, TrigramEmbedder{}, 1), Error);
        ScriptedClient empty({});
        CHECK_THROWS(run_refine(context(), empty, TrigramEmbedder{}, 1));
    }

    TEST_CASE("out-of-scene categories are grounded, rooms are kept") {
        ScriptedClient client({R"({"actions": ["[walk] <laundry_room>", "[putin] <clothespile> <washing_machine>"]})"});
        const LoopResult r = run_refine(context(), client, TrigramEmbedder{}, 3);
        REQUIRE(r.trace.substitutions.size() == 1);
        CHECK(r.trace.substitutions[0].from == "clothespile");
        CHECK(r.plan.steps[0].args[0] == Term::symbol("laundry_room"));
    }

    TEST_CASE("request body carries sampling parameters") {
        ChatConfig cfg;
        cfg.api_key_env = "ASPPLAN_TEST_KEY";
        setenv("ASPPLAN_TEST_KEY", "k", 1);
        const HttpChatClient client(cfg);
        const std::string body = client.request_body("hi");
        CHECK(body.find("\"temperature\":0.9") != std::string::npos);
        CHECK(body.find("\"presence_penalty\":0.8") != std::string::npos);
        unsetenv("ASPPLAN_TEST_KEY");
        CHECK_THROWS(HttpChatClient(cfg));
    }
}
