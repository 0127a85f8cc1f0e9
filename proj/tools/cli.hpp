#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "aspplan/embedding.hpp"
#include "aspplan/llm_client.hpp"

namespace aspplan::cli {

/// Settings shared by every subcommand; filled from flags and --config.
struct RunConfig {
    std::string model;
    std::string scene;
    std::string skeleton;
    std::string goal;
    std::string output;  // empty: stdout
    std::string data_dir;

    int horizon = 0;  // compile: 0 uses the planner's shortest horizon
    int max_horizon = 40;
    std::size_t node_budget = 1'000'000;
    bool prune = true;

    std::string task;
    std::string client = "stub";     // stub | remote
    std::string embedder = "bundled";  // bundled | remote
    std::string fixture;
    std::string example;
    int k_max = 3;
    ChatConfig chat;
    EmbeddingConfig embedding;

    std::string manifest;
    std::string csv;
    std::string trace;
    std::string index;
    bool states_only = false;
    bool verbose = false;
};

/// Exit codes: 0 success, 1 no plan / invalid skeleton / failed demo,
/// 2 input or configuration error, 3 planner budget exceeded.
int cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_skeleton(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ground(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aspplan::cli
