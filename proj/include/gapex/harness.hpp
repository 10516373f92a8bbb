#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapex/io.hpp"
#include "gapex/mdp.hpp"

namespace gapex {

struct EnvSpec {
    std::string kind;  // hard | gridworld | bandit | file
    int S = 0, A = 0, H = 0;
    double rho = 0.0;            // generator gap parameter (hard, gridworld)
    double epsilon = 0.0;        // hard instance reach parameter
    std::uint64_t seed = 0;      // gridworld generator seed
    std::vector<double> means;   // bandit arms
    std::string path;            // kind == file
};

struct BenchConfig {
    EnvSpec env;
    std::vector<std::string> methods;  // clipped | unclipped | simulator_uniform | mab_uniform
    std::string reward_name = "default";
    double rho = 0.1;
    int episodes = 1;
    double delta = 0.1;
    std::string bonus_mode = "full";   // full | simplified
    std::string tie_break = "random";  // random | smallest (exploration only)
    std::uint64_t seed = 0;
    std::vector<int> checkpoints;      // empty: geometric schedule
    bool exact_planning = false;       // plan at every episode
    std::string preset;                // "" | "agnostic"
    double target_epsilon = 0.0;       // used by the agnostic preset
    std::filesystem::path out_dir = "results";
};

BenchConfig parse_config(const nlohmann::json& j);
BenchConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const BenchConfig& config);

struct CurvePoint {
    int k = 0;
    double error = 0.0;
};

/// Worst-case reference c / sqrt(k), anchored so it matches the curve at its
/// first point.
std::vector<CurvePoint> minimax_reference(const std::vector<CurvePoint>& curve);

/// Least-squares slope of log(error) vs log(k) over points with
/// k_min <= k <= k_max. Needs at least three usable points.
double fit_slope(const std::vector<CurvePoint>& curve, double k_min, double k_max);

struct ExperimentOutput {
    std::filesystem::path dir;
    std::vector<ResultRow> rows;
    nlohmann::json manifest;
};

/// Runs the configured methods end to end: builds or loads the environment,
/// explores, plans at checkpoints, evaluates exact planning errors, and
/// writes environment/history/results/manifest/plot files under out_dir.
ExperimentOutput run_experiment(const BenchConfig& config);

struct PlotSeries {
    std::string label;
    std::vector<CurvePoint> points;
};

/// Self-contained log-log SVG plot of error versus episode count.
void write_svg_plot(const std::filesystem::path& path,
                    const std::vector<PlotSeries>& series, const std::string& title);

}  // namespace gapex
