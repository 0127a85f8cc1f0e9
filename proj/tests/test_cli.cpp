#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "aspplan/text.hpp"
#include "cli.hpp"
#include "micro_instances.hpp"
#include "support.hpp"

using namespace aspplan;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "aspplan");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("aspplan_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& text) const {
        const std::string p = (path / name).string();
        write_file(p, text);
        return p;
    }
};

const std::string kModel = aspplan::testing::kData + "/household.cp";
const std::string kScene = aspplan::testing::kData + "/scenes/demo_home.json";
const std::string kWash = aspplan::testing::kData + "/skeletons/wash_clothes.json";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("compile") {
        const Run a = run({"compile", "--model", kModel, "--scene", kScene, "--skeleton", kWash});
        const Run b = run({"compile", "--model", kModel, "--scene", kScene, "--skeleton", kWash});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("#program check(t).") != std::string::npos);
        const Run missing = run({"compile", "--model", kModel, "--scene", "/nonexistent/scene.json"});
        CHECK(missing.code == 2);
        CHECK(missing.err.find("/nonexistent/scene.json") != std::string::npos);
        CHECK(run({"compile", "--scene", kScene}).code == 2);
    }

    TEST_CASE("plan exit codes") {
        const Run ok = run({"plan", "--model", kModel, "--scene", kScene, "--skeleton", kWash});
        CHECK(ok.code == 0);
        CHECK(ok.out.find("occurs(1, switchon(5), 13)") != std::string::npos);
        CHECK(run({"plan", "--model", kModel, "--scene", kScene, "--skeleton", kWash, "--budget", "1"}).code == 3);
        TempDir tmp;
        const std::string model = tmp.file("lamp.cp", aspplan::testing::kLampModel);
        const std::string scene =
            tmp.file("on.json", R"({"entities": [{"id": 1, "category": "character"}, {"id": 2, "category": "lamp", "states": ["on"]}]})");
        const std::string sk = tmp.file("sk.txt", "switchon(lamp)");
        CHECK(run({"plan", "--model", model, "--scene", scene, "--skeleton", sk, "--max-horizon", "3"}).code == 1);
        CHECK(run({"plan", "--model", model, "--scene", scene, "--skeleton", tmp.file("bad.txt", "fly(lamp)")}).code == 2);
    }

    TEST_CASE("skeleton generation") {
        TempDir tmp;
        const std::string fixture = aspplan::testing::kData + "/fixtures/wash_clothes_responses.json";
        const std::string out = (tmp.path / "sk.json").string();
        const Run ok = run({"skeleton", "--model", kModel, "--scene", kScene, "--task", "wash clothes", "--fixture",
                            fixture, "-o", out, "--trace", (tmp.path / "trace.json").string()});
        CHECK(ok.code == 0);
        CHECK(read_file(out).find("[putin] <clothes_shirt> <washing_machine>") != std::string::npos);
        CHECK(fs::exists(tmp.path / "trace.json"));

        const std::string bad = tmp.file("bad.json", R"(["{\"actions\": [\"[fly] <lamp>\"]}", "{\"actions\": [\"[fly] <lamp>\"]}"])");
        const std::string out2 = (tmp.path / "sk2.json").string();
        const Run invalid = run({"skeleton", "--model", kModel, "--scene", kScene, "--task", "t", "--fixture", bad,
                                 "--k-max", "1", "-o", out2});
        CHECK(invalid.code == 1);
        CHECK(fs::exists(out2));

        unsetenv("OPENAI_API_KEY");
        CHECK(run({"skeleton", "--model", kModel, "--scene", kScene, "--task", "t", "--client", "remote"}).code == 2);
    }

    TEST_CASE("ground") {
        TempDir tmp;
        const std::string sk = tmp.file("raw.json", R"({"actions": ["[grab] <clothespile>"]})");
        const Run r = run({"ground", "--scene", kScene, "--skeleton", sk, "--index", (tmp.path / "idx.json").string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("[grab] <clothes_shirt>") != std::string::npos);
        CHECK(fs::exists(tmp.path / "idx.json"));
    }

    TEST_CASE("eval") {
        TempDir tmp;
        const Run empty = run({"eval", "--manifest", tmp.file("empty.json", R"({"tasks": []})")});
        CHECK(empty.code == 0);
        CHECK(empty.out.find("undefined") != std::string::npos);
        CHECK(run({"eval", "--manifest", tmp.file("bad.json", "{oops")}).code == 2);
        const Run full = run({"eval", "--manifest", aspplan::testing::kData + "/tasks.json", "--csv",
                              (tmp.path / "r.csv").string()});
        CHECK(full.code == 0);
        CHECK(full.out.find("100.0%") != std::string::npos);
        CHECK(fs::exists(tmp.path / "r.csv"));
    }

    TEST_CASE("demo and config files") {
        TempDir tmp;
        const Run d = run({"demo", "-o", (tmp.path / "demo").string()});
        CHECK(d.code == 0);
        CHECK(d.out.find("GAR: 1\n") != std::string::npos);
        CHECK(fs::exists(tmp.path / "demo" / "demo.lp"));
        const std::string cfg = tmp.file("run.toml", "model = \"" + kModel + "\"\nscene = \"" + kScene +
                                                         "\"\nskeleton = \"" + kWash + "\"\nbudget = 1\n");
        CHECK(run({"plan", "--config", cfg}).code == 3);
    }

    TEST_CASE("usage errors") {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}
