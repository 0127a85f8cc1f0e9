#pragma once

#include <random>
#include <string>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"
#include "aspplan/stable_semantics.hpp"

namespace aspplan::testing {

inline const std::string kData = ASPPLAN_DATA_DIR;

inline const CausalTheory& household() {
    static const CausalTheory t = load_action_model(kData + "/household.cp");
    return t;
}

inline const EnvGraph& demo_home() {
    static const EnvGraph g = load_graph_file(kData + "/scenes/demo_home.json");
    return g;
}

/// Fixed-seed generator for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
    template <typename V>
    const auto& pick(const V& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))]; }
};

/// Random normal program over atoms a0..a(n-1), with constraints.
inline GroundProgram random_program(Gen& gen, int atoms, int rules) {
    GroundProgram p;
    auto name = [&] { return "a" + std::to_string(gen.uniform(0, atoms - 1)); };
    for (int i = 0; i < atoms; ++i) p.atom("a" + std::to_string(i));
    for (int i = 0; i < rules; ++i) {
        std::vector<std::string> pos, neg;
        const int np = gen.uniform(0, 2), nn = gen.uniform(0, 2);
        for (int k = 0; k < np; ++k) pos.push_back(name());
        for (int k = 0; k < nn; ++k) neg.push_back(name());
        if (gen.coin(0.15)) p.add_constraint(pos, neg);
        else p.add_rule(name(), pos, neg);
    }
    return p;
}

}  // namespace aspplan::testing
