// Command-line front end: environment generation, reward-free exploration,
// optimistic planning, benchmark runs and slope fits.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapex/baselines.hpp"
#include "gapex/dp.hpp"
#include "gapex/envgen.hpp"
#include "gapex/explore.hpp"
#include "gapex/harness.hpp"
#include "gapex/io.hpp"
#include "gapex/plan.hpp"

using namespace gapex;

namespace {

BonusMode mode_from_string(const std::string& mode) {
    if (mode == "full") return BonusMode::kFull;
    if (mode == "simplified") return BonusMode::kSimplified;
    throw CLI::ValidationError("--mode must be 'full' or 'simplified'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tabular finite-horizon MDP toolkit: reward-free exploration with a "
                 "gap-clipped visitation bonus, optimistic planning for a revealed "
                 "reward, environment generators, baselines and a benchmark harness"};
    app.require_subcommand(1);

    // ---- gen-env ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen-env", "Generate an environment file");
    std::string gen_kind, gen_out = "environment.json";
    int gen_S = 10, gen_A = 10, gen_H = 5;
    double gen_rho = 0.4, gen_eps = 0.05;
    std::uint64_t gen_seed = 0;
    std::vector<double> gen_means;
    gen->add_option("--kind", gen_kind, "hard | gridworld | bandit")->required();
    gen->add_option("--S", gen_S, "number of states (hard: number of models)");
    gen->add_option("--A", gen_A, "number of actions");
    gen->add_option("--H", gen_H, "horizon (hard: payout length)");
    gen->add_option("--rho", gen_rho, "gap parameter of the construction");
    gen->add_option("--epsilon", gen_eps, "hard-instance reach parameter");
    gen->add_option("--seed", gen_seed, "generator seed (gridworld)");
    gen->add_option("--means", gen_means, "bandit arm means");
    gen->add_option("--out", gen_out, "output path");

    // ---- explore ----------------------------------------------------------
    auto* exp = app.add_subcommand("explore", "Run the reward-free exploration loop");
    std::string exp_env, exp_out_dir = "explore_out", exp_mode = "full",
                exp_ties = "random";
    double exp_rho = 0.1, exp_delta = 0.1;
    int exp_K = 1000;
    std::uint64_t exp_seed = 0;
    bool exp_unclipped = false;
    exp->add_option("--env", exp_env, "environment file")->required();
    exp->add_option("--rho", exp_rho, "gap parameter")->required();
    exp->add_option("--K", exp_K, "number of episodes")->required();
    exp->add_option("--delta", exp_delta, "failure probability (default 0.1)");
    exp->add_option("--mode", exp_mode, "bonus mode: full | simplified");
    exp->add_option("--tie-break", exp_ties, "greedy tie rule: random | smallest");
    exp->add_option("--seed", exp_seed, "run seed");
    exp->add_flag("--unclipped", exp_unclipped, "disable the bonus clip (comparator)");
    exp->add_option("--out-dir", exp_out_dir, "output directory");

    // ---- plan -------------------------------------------------------------
    auto* plan_cmd = app.add_subcommand("plan", "Plan from a collected history");
    std::string plan_history, plan_env, plan_reward = "default",
                plan_out = "plan_results.csv", plan_mode = "full";
    double plan_delta = 0.1;
    std::vector<int> plan_checkpoints;
    bool plan_all = false;
    plan_cmd->add_option("--history", plan_history, "history CSV")->required();
    plan_cmd->add_option("--env", plan_env, "environment file")->required();
    plan_cmd->add_option("--reward-name", plan_reward, "reward to plan for");
    plan_cmd->add_option("--delta", plan_delta, "failure probability");
    plan_cmd->add_option("--mode", plan_mode, "bonus mode: full | simplified");
    plan_cmd->add_option("--checkpoints", plan_checkpoints,
                         "episode checkpoints (default: geometric)");
    plan_cmd->add_flag("--all", plan_all, "plan at every episode");
    plan_cmd->add_option("--out", plan_out, "results CSV path");

    // ---- bench ------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Run a configured benchmark");
    std::string bench_config, bench_manifest;
    bench->add_option("--config", bench_config, "benchmark config (JSON)");
    bench->add_option("--manifest", bench_manifest,
                      "re-run from a previously written manifest");

    // ---- slope ------------------------------------------------------------
    auto* slope_cmd = app.add_subcommand("slope", "Fit a log-log error slope");
    std::string slope_results, slope_method = "clipped";
    double slope_kmin = 1, slope_kmax = 1e18;
    slope_cmd->add_option("--results", slope_results, "results CSV")->required();
    slope_cmd->add_option("--method", slope_method, "method column to fit");
    slope_cmd->add_option("--kmin", slope_kmin, "window lower bound");
    slope_cmd->add_option("--kmax", slope_kmax, "window upper bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            EnvironmentFile file;
            nlohmann::json layout;
            if (gen_kind == "hard") {
                HardInstance inst = hard_instance(gen_S, gen_A, gen_H, gen_rho, gen_eps);
                file.mdp = std::move(inst.mdp);
                file.rewards.emplace_back("default", std::move(inst.reward));
                layout["kind"] = "hard";
                layout["tree_depth"] = inst.layout.tree_depth;
                layout["green"] = inst.layout.green;
                layout["left_orange"] = inst.layout.left_orange;
                layout["left_blue"] = inst.layout.left_blue;
                layout["right_blue"] = inst.layout.right_blue;
                layout["right_orange"] = inst.layout.right_orange;
                layout["type1_leaf"] = inst.layout.type1_leaf;
                layout["type2_leaf"] = inst.layout.type2_leaf;
                layout["orange_step"] = inst.layout.orange_step;
            } else if (gen_kind == "gridworld") {
                Gridworld gw = random_gridworld(gen_H, gen_S, gen_A, gen_rho, gen_seed);
                file.mdp = std::move(gw.mdp);
                file.rewards.emplace_back("default", std::move(gw.reward));
                layout["kind"] = "gridworld";
                layout["x_star"] = gw.x_star;
                layout["a_star"] = gw.a_star;
                layout["rejections"] = gw.rejections;
            } else if (gen_kind == "bandit") {
                BanditEnv bandit = bandit_as_mdp(gen_means);
                file.mdp = std::move(bandit.mdp);
                file.rewards.emplace_back("default", std::move(bandit.reward));
                layout["kind"] = "bandit";
            } else {
                std::cerr << "unknown kind '" << gen_kind << "'\n";
                return 1;
            }
            file.layout = std::move(layout);
            write_environment(gen_out, file);
            const GapReport report = gaps(file.mdp, file.rewards.front().second);
            std::cout << "wrote " << gen_out << " (" << file.mdp.num_states
                      << " states, gap_min = " << format_double(report.gap_min)
                      << ")\n";
        } else if (*exp) {
            EnvironmentFile env = read_environment(exp_env);
            ExplorationConfig cfg;
            cfg.rho = exp_rho;
            cfg.episodes = exp_K;
            cfg.delta = exp_delta;
            cfg.bonus_mode = mode_from_string(exp_mode);
            cfg.tie_break = exp_ties == "smallest" ? TieBreak::kSmallestIndex
                                                   : TieBreak::kRandom;
            cfg.seed = exp_seed;
            cfg.clip_enabled = !exp_unclipped;
            ExploreResult run = explore(env.mdp, cfg);
            std::filesystem::create_directories(exp_out_dir);
            write_history_csv(std::filesystem::path(exp_out_dir) / "history.csv",
                              run.history);
            std::ofstream values(std::filesystem::path(exp_out_dir) /
                                 "exploration_values.csv");
            values << "episode,value\n";
            for (std::size_t k = 0; k < run.log.episode_values.size(); ++k) {
                values << (k + 1) << ',' << format_double(run.log.episode_values[k])
                       << '\n';
            }
            std::cout << "explored " << exp_K << " episodes -> " << exp_out_dir << "\n";
        } else if (*plan_cmd) {
            EnvironmentFile env = read_environment(plan_env);
            const RewardFn& reward = find_reward(env, plan_reward);
            History history = read_history_csv(plan_history);
            std::vector<int> checkpoints = plan_checkpoints;
            if (plan_all) {
                checkpoints.resize(history.episodes());
                for (int k = 1; k <= history.episodes(); ++k) checkpoints[k - 1] = k;
            } else if (checkpoints.empty()) {
                checkpoints = geometric_checkpoints(history.episodes());
            }
            PlanOptions opt;
            opt.delta = plan_delta;
            opt.bonus_mode = mode_from_string(plan_mode);
            PlanningResult result = plan(history, reward, opt, checkpoints);
            const std::vector<double> errors = planning_errors(result, env.mdp, reward);
            const double v_star =
                optimal_values(env.mdp, reward).v_at(0, env.mdp.initial_state);
            std::vector<ResultRow> rows;
            for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
                rows.push_back({"", result.checkpoints[j], errors[j],
                                static_cast<int>(j + 1), v_star});
            }
            write_results_csv(plan_out, rows, false);
            std::cout << "planned at " << result.checkpoints.size()
                      << " checkpoints -> " << plan_out << "\n";
        } else if (*bench) {
            if (bench_config.empty() == bench_manifest.empty()) {
                std::cerr << "bench needs exactly one of --config or --manifest\n";
                return 1;
            }
            BenchConfig config =
                load_config(bench_config.empty() ? bench_manifest : bench_config);
            ExperimentOutput out = run_experiment(config);
            std::cout << "results written to " << out.dir.string() << "\n";
        } else if (*slope_cmd) {
            const std::vector<ResultRow> rows = read_results_csv(slope_results);
            std::vector<CurvePoint> curve;
            for (const ResultRow& row : rows) {
                if (row.method == slope_method || row.method.empty()) {
                    curve.push_back({row.checkpoint_k, row.planning_error});
                }
            }
            const double slope = fit_slope(curve, slope_kmin, slope_kmax);
            std::cout << format_double(slope) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
