#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapex/harness.hpp"
#include "gapex/plan.hpp"

using namespace gapex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<CurvePoint> curve_of(const std::vector<ResultRow>& rows,
                                 const std::string& method) {
    std::vector<CurvePoint> out;
    for (const ResultRow& r : rows) {
        if (r.method == method) out.push_back({r.checkpoint_k, r.planning_error});
    }
    return out;
}

}  // namespace

TEST_CASE("fit_slope recovers power laws") {
    std::vector<CurvePoint> inv_k, inv_sqrt, flat;
    for (int k = 1; k <= 4096; k *= 2) {
        inv_k.push_back({k, 3.0 / k});
        inv_sqrt.push_back({k, 2.0 / std::sqrt(static_cast<double>(k))});
        flat.push_back({k, 0.7});
    }
    CHECK(std::abs(fit_slope(inv_k, 1, 4096) + 1.0) < 1e-6);
    CHECK(std::abs(fit_slope(inv_sqrt, 1, 4096) + 0.5) < 1e-6);
    CHECK(std::abs(fit_slope(flat, 1, 4096)) < 1e-6);
}

TEST_CASE("fit_slope needs at least three points in the window") {
    std::vector<CurvePoint> two = {{1, 1.0}, {2, 0.5}};
    CHECK_THROWS_AS(fit_slope(two, 1, 2), MdpError);
    std::vector<CurvePoint> narrow = {{1, 1.0}, {2, 0.5}, {4, 0.25}, {8, 0.125}};
    CHECK_THROWS_AS(fit_slope(narrow, 3, 5), MdpError);
}

TEST_CASE("minimax reference anchors and scales like one over sqrt(k)") {
    std::vector<CurvePoint> curve = {{4, 1.0}, {16, 0.3}, {64, 0.01}};
    const auto ref = minimax_reference(curve);
    REQUIRE(ref.size() == 3);
    CHECK(ref[0].error == doctest::Approx(1.0));       // anchored
    CHECK(ref[1].error == doctest::Approx(0.5));       // 1 * sqrt(4/16)
    CHECK(ref[2].error == doctest::Approx(0.25));      // 1 * sqrt(4/64)
    for (std::size_t i = 1; i < ref.size(); ++i) {
        CHECK(ref[i].error < ref[i - 1].error);
    }
    CHECK_THROWS_AS(minimax_reference({}), MdpError);
}

TEST_CASE("geometric checkpoints double up to K") {
    CHECK(geometric_checkpoints(1) == std::vector<int>{1});
    CHECK(geometric_checkpoints(8) == std::vector<int>{1, 2, 4, 8});
    CHECK(geometric_checkpoints(20) == std::vector<int>{1, 2, 4, 8, 16, 20});
}

TEST_CASE("config parsing fills defaults and the agnostic preset scales rho") {
    nlohmann::json j = {
        {"env", {{"kind", "gridworld"}, {"S", 6}, {"A", 3}, {"H", 4}, {"rho", 0.3}, {"seed", 5}}},
        {"episodes", 64},
        {"seed", 9},
        {"preset", "agnostic"},
        {"target_epsilon", 0.8},
        {"out_dir", "unused"},
    };
    BenchConfig config = parse_config(j);
    CHECK(config.methods == std::vector<std::string>{"clipped"});
    CHECK(config.delta == 0.1);
    CHECK(config.bonus_mode == "full");
    CHECK(config.env.kind == "gridworld");

    TempDir dir("gapex_harness_preset");
    config.out_dir = dir.path / "run";
    ExperimentOutput out = run_experiment(config);
    // rho resolved to target_epsilon / H = 0.2.
    CHECK(out.manifest["derived"]["resolved_rho"].get<double>() ==
          doctest::Approx(0.8 / 4.0));
}

TEST_CASE("bench run writes all artifacts and is reproducible bit for bit") {
    TempDir dir("gapex_harness_bench");
    nlohmann::json j = {
        {"env", {{"kind", "gridworld"}, {"S", 5}, {"A", 3}, {"H", 3}, {"rho", 0.3}, {"seed", 2}}},
        {"methods", {"clipped", "unclipped", "simulator_uniform"}},
        {"rho", 0.3},
        {"episodes", 128},
        {"delta", 0.1},
        {"bonus_mode", "full"},
        {"seed", 11},
        {"out_dir", (dir.path / "a").string()},
    };
    BenchConfig config = parse_config(j);
    ExperimentOutput first = run_experiment(config);

    CHECK(fs::exists(first.dir / "results.csv"));
    CHECK(fs::exists(first.dir / "environment.json"));
    CHECK(fs::exists(first.dir / "manifest.json"));
    CHECK(fs::exists(first.dir / "history_clipped.csv"));
    CHECK(fs::exists(first.dir / "history_unclipped.csv"));
    CHECK(fs::exists(first.dir / "plot.svg"));

    // Errors lie in [0, H] and the reference curve exists.
    const auto rows = read_results_csv(first.dir / "results.csv");
    bool saw_ref = false;
    for (const ResultRow& row : rows) {
        CHECK(row.planning_error >= 0.0);
        CHECK(row.planning_error <= 3.0 + 1e-9);
        if (row.method == "minimax_ref") saw_ref = true;
    }
    CHECK(saw_ref);

    // The manifest records the gap condition and the simulator sample bound.
    CHECK(first.manifest["derived"]["rho_condition_ok"].get<bool>());
    CHECK(first.manifest["derived"]["gap_min"].get<double>() >= 0.3 - 1e-9);
    CHECK(first.manifest["derived"]["methods"]["simulator_uniform"]
              .contains("sample_bound_T"));
    bool saw_tag = false;
    for (const auto& tag :
         first.manifest["derived"]["methods"]["simulator_uniform"]["checkpoints"]) {
        CHECK(tag.contains("above_bound"));
        saw_tag = true;
    }
    CHECK(saw_tag);

    // Re-running the same config reproduces the results file exactly.
    config.out_dir = dir.path / "b";
    ExperimentOutput second = run_experiment(config);
    CHECK(slurp(first.dir / "results.csv") == slurp(second.dir / "results.csv"));

    // Re-running from the manifest also reproduces it.
    BenchConfig from_manifest = load_config(first.dir / "manifest.json");
    from_manifest.out_dir = dir.path / "c";
    ExperimentOutput third = run_experiment(from_manifest);
    CHECK(slurp(first.dir / "results.csv") == slurp(third.dir / "results.csv"));
}

TEST_CASE("single-episode run reports one checkpoint with a bounded error") {
    TempDir dir("gapex_harness_k1");
    nlohmann::json j = {
        {"env", {{"kind", "gridworld"}, {"S", 4}, {"A", 2}, {"H", 3}, {"rho", 0.25}, {"seed", 3}}},
        {"methods", {"clipped"}},
        {"rho", 0.25},
        {"episodes", 1},
        {"seed", 1},
        {"out_dir", (dir.path / "run").string()},
    };
    ExperimentOutput out = run_experiment(parse_config(j));
    const auto curve = curve_of(out.rows, "clipped");
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].k == 1);
    CHECK(curve[0].error <= 3.0 + 1e-9);
}

TEST_CASE("exact planning mode reports every episode") {
    TempDir dir("gapex_harness_exact");
    nlohmann::json j = {
        {"env", {{"kind", "gridworld"}, {"S", 4}, {"A", 2}, {"H", 3}, {"rho", 0.25}, {"seed", 6}}},
        {"methods", {"clipped"}},
        {"rho", 0.25},
        {"episodes", 24},
        {"seed", 2},
        {"exact_planning", true},
        {"out_dir", (dir.path / "run").string()},
    };
    ExperimentOutput out = run_experiment(parse_config(j));
    const auto curve = curve_of(out.rows, "clipped");
    REQUIRE(curve.size() == 24);
    for (int k = 1; k <= 24; ++k) CHECK(curve[k - 1].k == k);
}

TEST_CASE("bandit environments run the uniform baseline") {
    TempDir dir("gapex_harness_mab");
    nlohmann::json j = {
        {"env", {{"kind", "bandit"}, {"means", {0.9, 0.5, 0.4}}}},
        {"methods", {"mab_uniform"}},
        {"rho", 0.4},
        {"episodes", 256},
        {"seed", 5},
        {"out_dir", (dir.path / "run").string()},
    };
    ExperimentOutput out = run_experiment(parse_config(j));
    const auto curve = curve_of(out.rows, "mab_uniform");
    CHECK(!curve.empty());
    CHECK(curve.back().error == doctest::Approx(0.0));
}
