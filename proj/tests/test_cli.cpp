#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "reevrp/io.hpp"

namespace fs = std::filesystem;
using reevrp::Json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "reevrp_cli_test";

int run(const std::string& args) {
    const std::string cmd = std::string(REEVRP_CLI) + " " + args + " > " + (kWork / "stdout.txt").string() +
                            " 2> " + (kWork / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string at(const std::string& name) { return (kWork / name).string(); }

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        fs::remove_all(kWork);
        fs::create_directories(kWork);
    }
};

}  // namespace

TEST_F(Cli, GenerateIsDeterministic) {
    ASSERT_EQ(run("generate --n 12 --seed 5 --out " + at("a.json")), 0);
    ASSERT_EQ(run("generate --n 12 --seed 5 --out " + at("b.json")), 0);
    EXPECT_EQ(slurp(at("a.json")), slurp(at("b.json")));
    EXPECT_EQ(reevrp::read_json_file(at("a.json"))["n"], 12);
}

TEST_F(Cli, SolveAndEvaluate) {
    ASSERT_EQ(run("generate --n 7 --seed 2 --out " + at("small.json")), 0);
    ASSERT_EQ(run("solve --instance " + at("small.json") + " --algorithm exact --out " + at("exact.json")), 0);
    const Json exact = reevrp::read_json_file(at("exact.json"));
    EXPECT_EQ(exact["certified"], true);
    ASSERT_EQ(run("solve --instance " + at("small.json") + " --seeds 3 --iterations 20 --trace " + at("trace.csv") +
                  " --out " + at("its.json")),
              0);
    const Json its = reevrp::read_json_file(at("its.json"));
    EXPECT_FALSE(its.contains("certified"));
    EXPECT_GE(its["objective_micro_usd"].get<std::int64_t>(), exact["objective_micro_usd"].get<std::int64_t>());
    EXPECT_EQ(slurp(at("trace.csv")).rfind("iteration,best_merit_micro_usd,feasible\n", 0), 0u);

    ASSERT_EQ(run("evaluate --instance " + at("small.json") + " --solution " + at("exact.json")), 0);
    const Json report = Json::parse(slurp(at("stdout.txt")));
    EXPECT_EQ(report["feasible"], true);
    EXPECT_EQ(report["objective_micro_usd"], exact["objective_micro_usd"]);
}

TEST_F(Cli, ExitCodes) {
    ASSERT_EQ(run("generate --n 5 --seed 1 --out " + at("five.json")), 0);
    std::ofstream(at("partial.json")) << R"({"routes": [[1, 2]], "types": ["C"]})";
    EXPECT_EQ(run("evaluate --instance " + at("five.json") + " --solution " + at("partial.json")), 2);
    std::ofstream(at("broken.json")) << "{ not json";
    EXPECT_EQ(run("solve --instance " + at("broken.json")), 3);
    EXPECT_EQ(run("solve --instance " + at("missing-file.json")), 3);
    EXPECT_EQ(run("solve --instance " + at("five.json") + " --algorithm magic"), 3);
    EXPECT_EQ(run("bogus"), 3);

    Json inst = reevrp::read_json_file(at("five.json"));
    inst["fleet"]["m_conventional"] = 0;
    inst["fleet"]["m_hybrid"] = 0;
    reevrp::write_json_file(at("nofleet.json"), inst);
    EXPECT_EQ(run("solve --instance " + at("nofleet.json") + " --algorithm exact"), 2);
    EXPECT_EQ(run("solve --instance " + at("nofleet.json") + " --iterations 2"), 2);
}

TEST_F(Cli, PriceAndSeparate) {
    ASSERT_EQ(run("generate --n 6 --seed 3 --out " + at("p.json")), 0);
    std::ofstream(at("duals.json")) << R"({"cover/1": 9000000, "cover/2": 9000000, "fleet/C": -10})";
    ASSERT_EQ(run("price --instance " + at("p.json") + " --duals " + at("duals.json") + " --subtype C"), 0);
    const Json priced = Json::parse(slurp(at("stdout.txt")));
    EXPECT_GT(priced["negative_routes"].get<int>(), 0);
    EXPECT_LT(priced["min_reduced_cost_micro_usd"].get<double>(), 0);
    std::ofstream(at("bad_duals.json")) << R"({"fleet/H": 5})";
    EXPECT_EQ(run("price --instance " + at("p.json") + " --duals " + at("bad_duals.json")), 3);

    std::ofstream(at("frac.json")) << R"([{"route": [1, 2], "subtype": "G", "weight": 0.5},
                                          {"route": [2, 1], "subtype": "G", "weight": 0.5}])";
    ASSERT_EQ(run("separate --instance " + at("p.json") + " --solution " + at("frac.json")), 0);
    const Json cuts = Json::parse(slurp(at("stdout.txt")));
    EXPECT_TRUE(cuts.contains("ipec"));
    EXPECT_TRUE(cuts.contains("rci"));
    EXPECT_TRUE(cuts["strength"].contains("satisfied"));
}

TEST_F(Cli, SweepWritesReport) {
    std::ofstream(at("sweep.json")) << R"({
        "sources": [{"name": "g", "generate": {"n": 6, "seed": 2}}],
        "defaults": {"algorithm": "exact"},
        "grid": "table2"})";
    ASSERT_EQ(run("sweep --grid " + at("sweep.json") + " --jobs 2 --out " + at("sweep_out")), 0);
    const std::string csv = slurp(kWork / "sweep_out" / "report.csv");
    EXPECT_EQ(csv.rfind("instance,scenario,", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    ASSERT_EQ(run("sweep --grid " + at("sweep.json") + " --jobs 1 --out " + at("sweep_again")), 0);
    EXPECT_EQ(csv, slurp(kWork / "sweep_again" / "report.csv"));
}
