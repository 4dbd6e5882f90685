#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() { return ALIGNKIT_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "alignkit_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("pack subcommand over a small fixture") {
    TempDir dir;
    const auto in = dir.path / "lengths.jsonl";
    {
        std::ofstream f(in);
        f << R"({"id": "a", "tokens": 60})" << "\n"
          << R"({"id": "b", "tokens": 50})" << "\n"
          << R"({"id": "c", "tokens": 40})" << "\n"
          << R"({"id": "d", "tokens": 30})" << "\n"
          << R"({"id": "e", "tokens": 20})" << "\n";
    }
    const auto out = dir.path / "plan.json";
    const int rc = run("pack --capacity 100 --in " + in.string() + " --out " +
                       out.string() + " --report");
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(slurp(out));
    CHECK(rep["tool"] == "pack");
    CHECK(rep["results"]["num_packs"] == 2);
    CHECK(rep["results"]["packs"][0]["ids"] == nlohmann::json::array({"a", "c"}));
    CHECK(rep["results"]["packs"][0]["offsets"] == nlohmann::json::array({0, 60, 100}));
    CHECK(rep["results"]["utilization"]["packed"] == doctest::Approx(1.0));
    CHECK(rep["inputs"].size() == 1);
}

TEST_CASE("unknown subcommand and bad flags exit 2") {
    CHECK(run("no-such-command") == 2);
    CHECK(run("pack --capacity 100") == 2);  // missing required flags
    CHECK(run("") == 2);                     // no subcommand
}

TEST_CASE("pipeline errors exit 1") {
    TempDir dir;
    const auto out = dir.path / "r.json";
    CHECK(run("pack --capacity 10 --in " + (dir.path / "missing.jsonl").string() +
              " --out " + out.string()) == 1);
}

TEST_CASE("same seed and inputs give byte-identical reports") {
    TempDir dir;
    const auto in = dir.path / "rewards.jsonl";
    {
        std::ofstream f(in);
        f << "[1.0, 2.0, 3.0]\n[0.5, 0.5, 0.5]\n";
    }
    const auto o1 = dir.path / "r1.json";
    const auto o2 = dir.path / "r2.json";
    REQUIRE(run("--seed 7 grpo-adv --in " + in.string() + " --out " + o1.string()) == 0);
    REQUIRE(run("--seed 7 grpo-adv --in " + in.string() + " --out " + o2.string()) == 0);
    CHECK(slurp(o1) == slurp(o2));

    const auto g1 = dir.path / "g1.json";
    const auto g2 = dir.path / "g2.json";
    REQUIRE(run("--seed 3 grad-check --trials 50 --out " + g1.string()) == 0);
    REQUIRE(run("--seed 3 grad-check --trials 50 --out " + g2.string()) == 0);
    CHECK(slurp(g1) == slurp(g2));
}

TEST_CASE("plan-ckpt emits the known optimum") {
    TempDir dir;
    const auto out = dir.path / "ckpt.json";
    REQUIRE(run("plan-ckpt --layers 80 --acts-per-layer 5 --out " + out.string()) == 0);
    auto rep = nlohmann::json::parse(slurp(out));
    CHECK(rep["results"]["k"] == 4);
    CHECK(rep["results"]["memory_units"] == doctest::Approx(40.0));
}
