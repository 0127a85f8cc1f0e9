#include <doctest.h>

#include <cmath>

#include "aspplan/embedding.hpp"
#include "aspplan/grounding.hpp"
#include "aspplan/text.hpp"
#include "support.hpp"

using namespace aspplan;
using aspplan::testing::Gen;

TEST_SUITE("grounding") {
    TEST_CASE("cosine") {
        CHECK(cosine({1, 0}, {0, 1}) == doctest::Approx(0).epsilon(1e-12));
        CHECK(std::abs(cosine({1, 1}, {1, 0}) - 0.70710678) < 1e-8);
        CHECK(cosine({2, 0}, {-1, 0}) == -1);
        CHECK_THROWS(cosine({1, 0}, {1, 0, 0}));
        CHECK_THROWS(cosine({0, 0}, {1, 0}));
    }

    TEST_CASE("property: cosine is symmetric, bounded and scale invariant") {
        Gen gen(5);
        for (int i = 0; i < 500; ++i) {
            const int d = gen.uniform(1, 8);
            EmbeddingVector a, b;
            for (int k = 0; k < d; ++k) {
                a.push_back(gen.real(-5, 5));
                b.push_back(gen.real(-5, 5));
            }
            const double c = cosine(a, b);
            CHECK(c == doctest::Approx(cosine(b, a)).epsilon(1e-12));
            CHECK(c <= 1.0);
            CHECK(c >= -1.0);
            EmbeddingVector scaled = a;
            for (auto& x : scaled) x *= 3.5;
            CHECK(cosine(scaled, b) == doctest::Approx(c).epsilon(1e-9));
            CHECK(std::abs(cosine(a, a) - 1) < 1e-9);
        }
    }

    TEST_CASE("trigram embedder") {
        const TrigramEmbedder e;
        const auto v = e.embed("clothes_pants");
        CHECK(v.size() == 256);
        double norm = 0;
        for (double x : v) norm += x * x;
        CHECK(norm == doctest::Approx(1.0));
        CHECK(v == e.embed("Clothes Pants"));
        CHECK(e.identity() == "trigram-256");
        CHECK(cosine(e.embed("washing machine"), e.embed("washing_machine")) == doctest::Approx(1.0));
    }

    TEST_CASE("nearest and ground_plan") {
        const TrigramEmbedder e;
        const std::set<std::string> cats{"clothes_pants", "washing_machine", "lamp", "laundry_room"};
        const GroundingIndex idx = build_index(cats, e);
        for (const auto& c : cats) {
            const Match m = nearest(c, idx, e);
            CHECK(m.category == c);
            CHECK(m.similarity == doctest::Approx(1.0));
        }
        CHECK(nearest("washer machine", idx, e).category == "washing_machine");
        std::vector<Replacement> subs;
        const SkeletonPlan p = SkeletonPlan::sequence({
            SkeletonPlan::action("putin", {Term::symbol("clothes_pant"), Term::symbol("washing_machine")}),
            SkeletonPlan::action("grab", {Term::symbol("clothes_pant")}),
            SkeletonPlan::action("switchon", {Term::number(5)}),
        });
        const SkeletonPlan grounded = ground_plan(p, cats, idx, e, &subs);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].from == "clothes_pant");
        CHECK(subs[0].to == "clothes_pants");
        CHECK(grounded.steps[1].args[0] == Term::symbol("clothes_pants"));
        CHECK(grounded.steps[2].args[0] == Term::number(5));
        CHECK_THROWS_AS(build_index({}, e), Error);
    }

    TEST_CASE("index persistence") {
        const TrigramEmbedder e;
        const GroundingIndex idx = build_index({"lamp", "book"}, e);
        const GroundingIndex back = load_index(save_index(idx));
        CHECK(back == idx);
        CHECK(back.contains("lamp"));
        CHECK_THROWS(nearest("lamp", back, TrigramEmbedder(64)));
    }
}
