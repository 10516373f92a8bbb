#include "gapex/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "gapex/baselines.hpp"
#include "gapex/dp.hpp"
#include "gapex/envgen.hpp"
#include "gapex/explore.hpp"
#include "gapex/plan.hpp"
#include "gapex/rng.hpp"

namespace gapex {

namespace {

using nlohmann::json;

BonusMode parse_bonus_mode(const std::string& mode) {
    if (mode == "full") return BonusMode::kFull;
    if (mode == "simplified") return BonusMode::kSimplified;
    throw MdpError("unknown bonus mode '" + mode + "'");
}

TieBreak parse_tie_break(const std::string& rule) {
    if (rule == "random") return TieBreak::kRandom;
    if (rule == "smallest") return TieBreak::kSmallestIndex;
    throw MdpError("unknown tie-break rule '" + rule + "'");
}

}  // namespace

BenchConfig parse_config(const json& j) {
    BenchConfig config;
    const json& env = j.at("env");
    config.env.kind = env.at("kind").get<std::string>();
    config.env.S = env.value("S", 0);
    config.env.A = env.value("A", 0);
    config.env.H = env.value("H", 0);
    config.env.rho = env.value("rho", 0.0);
    config.env.epsilon = env.value("epsilon", 0.0);
    config.env.seed = env.value("seed", std::uint64_t{0});
    if (env.contains("means")) {
        config.env.means = env["means"].get<std::vector<double>>();
    }
    config.env.path = env.value("path", std::string{});

    config.methods = j.value("methods", std::vector<std::string>{"clipped"});
    config.reward_name = j.value("reward", std::string{"default"});
    config.rho = j.value("rho", 0.1);
    config.episodes = j.value("episodes", 1);
    config.delta = j.value("delta", 0.1);
    config.bonus_mode = j.value("bonus_mode", std::string{"full"});
    config.tie_break = j.value("tie_break", std::string{"random"});
    config.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("checkpoints") && j["checkpoints"].is_array()) {
        config.checkpoints = j["checkpoints"].get<std::vector<int>>();
    }
    config.exact_planning = j.value("exact_planning", false);
    config.preset = j.value("preset", std::string{});
    config.target_epsilon = j.value("target_epsilon", 0.0);
    config.out_dir = j.value("out_dir", std::string{"results"});
    return config;
}

BenchConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MdpError("cannot open config " + path.string());
    json j;
    in >> j;
    // Manifests embed the config they were produced from; accept both forms.
    if (j.contains("config")) return parse_config(j["config"]);
    return parse_config(j);
}

json config_to_json(const BenchConfig& config) {
    json env;
    env["kind"] = config.env.kind;
    if (config.env.S) env["S"] = config.env.S;
    if (config.env.A) env["A"] = config.env.A;
    if (config.env.H) env["H"] = config.env.H;
    if (config.env.rho != 0.0) env["rho"] = config.env.rho;
    if (config.env.epsilon != 0.0) env["epsilon"] = config.env.epsilon;
    env["seed"] = config.env.seed;
    if (!config.env.means.empty()) env["means"] = config.env.means;
    if (!config.env.path.empty()) env["path"] = config.env.path;

    json j;
    j["env"] = std::move(env);
    j["methods"] = config.methods;
    j["reward"] = config.reward_name;
    j["rho"] = config.rho;
    j["episodes"] = config.episodes;
    j["delta"] = config.delta;
    j["bonus_mode"] = config.bonus_mode;
    j["tie_break"] = config.tie_break;
    j["seed"] = config.seed;
    if (!config.checkpoints.empty()) j["checkpoints"] = config.checkpoints;
    j["exact_planning"] = config.exact_planning;
    if (!config.preset.empty()) {
        j["preset"] = config.preset;
        j["target_epsilon"] = config.target_epsilon;
    }
    j["out_dir"] = config.out_dir.string();
    return j;
}

std::vector<CurvePoint> minimax_reference(const std::vector<CurvePoint>& curve) {
    if (curve.empty()) throw MdpError("cannot anchor a reference to an empty curve");
    const double c = curve.front().error * std::sqrt(static_cast<double>(curve.front().k));
    std::vector<CurvePoint> out;
    out.reserve(curve.size());
    for (const CurvePoint& p : curve) {
        out.push_back({p.k, c / std::sqrt(static_cast<double>(p.k))});
    }
    return out;
}

double fit_slope(const std::vector<CurvePoint>& curve, double k_min, double k_max) {
    std::vector<double> xs, ys;
    for (const CurvePoint& p : curve) {
        if (p.k < k_min || p.k > k_max || p.error <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(p.k)));
        ys.push_back(std::log(p.error));
    }
    if (xs.size() < 3) throw MdpError("need at least three points to fit a slope");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

namespace {

struct ResolvedEnv {
    TabularMdp mdp;
    std::vector<std::pair<std::string, RewardFn>> rewards;
    json layout;
};

ResolvedEnv resolve_env(const BenchConfig& config) {
    ResolvedEnv out;
    const EnvSpec& spec = config.env;
    if (spec.kind == "hard") {
        HardInstance inst =
            hard_instance(spec.S, spec.A, spec.H, spec.rho, spec.epsilon);
        out.mdp = std::move(inst.mdp);
        out.rewards.emplace_back("default", std::move(inst.reward));
        out.layout["kind"] = "hard";
        out.layout["tree_depth"] = inst.layout.tree_depth;
        out.layout["green"] = inst.layout.green;
        out.layout["left_orange"] = inst.layout.left_orange;
        out.layout["left_blue"] = inst.layout.left_blue;
        out.layout["right_blue"] = inst.layout.right_blue;
        out.layout["right_orange"] = inst.layout.right_orange;
        out.layout["type1_leaf"] = inst.layout.type1_leaf;
        out.layout["type2_leaf"] = inst.layout.type2_leaf;
        out.layout["orange_step"] = inst.layout.orange_step;
    } else if (spec.kind == "gridworld") {
        Gridworld gw = random_gridworld(spec.H, spec.S, spec.A,
                                        spec.rho != 0.0 ? spec.rho : config.rho,
                                        spec.seed);
        out.mdp = std::move(gw.mdp);
        out.rewards.emplace_back("default", std::move(gw.reward));
        out.layout["kind"] = "gridworld";
        out.layout["x_star"] = gw.x_star;
        out.layout["a_star"] = gw.a_star;
        out.layout["rejections"] = gw.rejections;
    } else if (spec.kind == "bandit") {
        BanditEnv bandit = bandit_as_mdp(spec.means);
        out.mdp = std::move(bandit.mdp);
        out.rewards.emplace_back("default", std::move(bandit.reward));
        out.layout["kind"] = "bandit";
    } else if (spec.kind == "file") {
        EnvironmentFile env = read_environment(spec.path);
        out.mdp = std::move(env.mdp);
        out.rewards = std::move(env.rewards);
        out.layout = std::move(env.layout);
    } else {
        throw MdpError("unknown environment kind '" + spec.kind + "'");
    }
    validate_mdp(out.mdp);
    return out;
}

std::vector<CurvePoint> rows_to_curve(const std::vector<ResultRow>& rows,
                                      const std::string& method) {
    std::vector<CurvePoint> out;
    for (const ResultRow& row : rows) {
        if (row.method == method) out.push_back({row.checkpoint_k, row.planning_error});
    }
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const BenchConfig& config_in) {
    BenchConfig config = config_in;
    ResolvedEnv env = resolve_env(config);
    const TabularMdp& mdp = env.mdp;
    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    const int H = mdp.horizon;
    const int K = config.episodes;
    if (K < 1) throw MdpError("episode count must be >= 1");

    // Gap-agnostic preset: derive the gap parameter from a target accuracy.
    if (config.preset == "agnostic") {
        if (config.target_epsilon <= 0.0) {
            throw MdpError("agnostic preset needs a positive target_epsilon");
        }
        config.rho = config.target_epsilon / H;
    } else if (!config.preset.empty()) {
        throw MdpError("unknown preset '" + config.preset + "'");
    }

    const RewardFn* reward = nullptr;
    for (const auto& [name, r] : env.rewards) {
        if (name == config.reward_name) reward = &r;
    }
    if (!reward) throw MdpError("environment has no reward '" + config.reward_name + "'");

    const GapReport gap_report = gaps(mdp, *reward);
    const bool rho_ok = config.rho <= gap_report.gap_min + 1e-9;
    if (!rho_ok) {
        std::cerr << "warning: gap parameter " << config.rho
                  << " exceeds the instance's minimum positive gap "
                  << gap_report.gap_min << "; error guarantees degrade gracefully\n";
    }

    std::vector<int> checkpoints = config.checkpoints;
    if (config.exact_planning) {
        checkpoints.resize(K);
        for (int k = 1; k <= K; ++k) checkpoints[k - 1] = k;
    } else if (checkpoints.empty()) {
        checkpoints = geometric_checkpoints(K);
    }

    const double v_star = optimal_values(mdp, *reward).v_at(0, mdp.initial_state);
    const double iota = iota_constant(H, S, A, K, config.delta);
    const BonusMode mode = parse_bonus_mode(config.bonus_mode);

    std::filesystem::create_directories(config.out_dir);
    write_environment(config.out_dir / "environment.json",
                      {mdp, env.rewards, env.layout});

    ExperimentOutput output;
    output.dir = config.out_dir;

    json method_notes = json::object();
    const Rng root(config.seed);

    for (const std::string& method : config.methods) {
        if (method == "clipped" || method == "unclipped") {
            ExplorationConfig ecfg;
            ecfg.rho = config.rho;
            ecfg.episodes = K;
            ecfg.delta = config.delta;
            ecfg.bonus_mode = mode;
            ecfg.tie_break = parse_tie_break(config.tie_break);
            ecfg.seed = config.seed;
            ecfg.clip_enabled = (method == "clipped");
            ExploreResult run = explore(mdp, ecfg, checkpoints);

            PlanOptions popt;
            popt.delta = config.delta;
            popt.bonus_mode = mode;
            PlanningResult planned =
                plan_from_snapshots(run.log.snapshots, K, *reward, popt);
            const std::vector<double> errors = planning_errors(planned, mdp, *reward);

            for (std::size_t j = 0; j < planned.checkpoints.size(); ++j) {
                double err = errors[j];
                if (err < 0.0) {
                    // A mixture can trail the optimum by rounding noise only.
                    if (err < -1e-9) throw MdpError("mixture value exceeds optimum");
                    err = 0.0;
                }
                output.rows.push_back({method, planned.checkpoints[j], err,
                                       static_cast<int>(j + 1), v_star});
            }
            write_history_csv(config.out_dir / ("history_" + method + ".csv"),
                              run.history);

            std::ofstream values(config.out_dir / ("exploration_values_" + method + ".csv"));
            values << "episode,value\n";
            for (std::size_t k = 0; k < run.log.episode_values.size(); ++k) {
                values << (k + 1) << ',' << format_double(run.log.episode_values[k])
                       << '\n';
            }
        } else if (method == "simulator_uniform") {
            const std::int64_t t_star =
                simulator_sample_bound(S, A, H, config.rho, config.delta);
            json tags = json::array();
            for (std::size_t j = 0; j < checkpoints.size(); ++j) {
                const int k = checkpoints[j];
                const std::int64_t budget = static_cast<std::int64_t>(k) * H;
                const std::int64_t per_pair = budget / (static_cast<std::int64_t>(S) * A);
                if (per_pair < 1) continue;
                Rng rng = root.split(0x51D0ULL + j);
                DeterministicPolicy policy =
                    simulator_uniform(mdp, *reward, per_pair, rng);
                const double value =
                    policy_value(mdp, *reward, policy).v_at(0, mdp.initial_state);
                output.rows.push_back({method, k, v_star - value, 1, v_star});
                tags.push_back({{"checkpoint_k", k},
                                {"total_samples", budget},
                                {"above_bound", budget >= t_star}});
            }
            method_notes["simulator_uniform"] = {{"sample_bound_T", t_star},
                                                 {"checkpoints", std::move(tags)}};
        } else if (method == "mab_uniform") {
            if (S != 1 || H != 1) {
                throw MdpError("mab_uniform needs a one-state, one-step environment");
            }
            BernoulliBandit bandit;
            bandit.means.resize(A);
            double best_mean = 0.0;
            for (action_t a = 0; a < A; ++a) {
                bandit.means[a] = reward->at(0, 0, a);
                best_mean = std::max(best_mean, bandit.means[a]);
            }
            for (std::size_t j = 0; j < checkpoints.size(); ++j) {
                const int k = checkpoints[j];
                if (k < A) continue;
                Rng rng = root.split(0xAB1DULL + j);
                const action_t arm = mab_uniform_explore(bandit, k, rng);
                output.rows.push_back(
                    {method, k, best_mean - bandit.means[arm], 1, v_star});
            }
        } else {
            throw MdpError("unknown method '" + method + "'");
        }
    }

    // Reference curve anchored at the first clipped checkpoint (or the first
    // method that produced a curve).
    std::string anchor_method;
    for (const std::string& m : config.methods) {
        if (rows_to_curve(output.rows, m).empty()) continue;
        if (anchor_method.empty()) anchor_method = m;
        if (m == "clipped") {
            anchor_method = m;
            break;
        }
    }
    if (!anchor_method.empty()) {
        const auto anchor_curve = rows_to_curve(output.rows, anchor_method);
        for (const CurvePoint& p : minimax_reference(anchor_curve)) {
            output.rows.push_back({"minimax_ref", p.k, p.error, 0, v_star});
        }
    }

    write_results_csv(config.out_dir / "results.csv", output.rows, true);

    std::vector<PlotSeries> series;
    for (const std::string& m : config.methods) {
        auto curve = rows_to_curve(output.rows, m);
        if (!curve.empty()) series.push_back({m, std::move(curve)});
    }
    auto ref_curve = rows_to_curve(output.rows, "minimax_ref");
    if (!ref_curve.empty()) series.push_back({"minimax_ref", std::move(ref_curve)});
    write_svg_plot(config.out_dir / "plot.svg", series, "planning error vs episodes");

    json manifest;
    manifest["config"] = config_to_json(config_in);
    json derived;
    derived["resolved_rho"] = config.rho;
    derived["iota"] = iota;
    derived["gap_min"] = gap_report.gap_min;
    derived["rho_condition_ok"] = rho_ok;
    derived["optimal_value"] = v_star;
    derived["state_count"] = S;
    derived["checkpoints"] = checkpoints;
    if (!env.layout.is_null()) derived["layout"] = env.layout;
    if (!method_notes.empty()) derived["methods"] = method_notes;
    manifest["derived"] = std::move(derived);
    output.manifest = manifest;

    std::ofstream mf(config.out_dir / "manifest.json");
    mf << manifest.dump(1) << '\n';

    return output;
}

void write_svg_plot(const std::filesystem::path& path,
                    const std::vector<PlotSeries>& series, const std::string& title) {
    constexpr double kWidth = 720, kHeight = 480;
    constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
    static const char* kColors[] = {"#c0392b", "#2980b9", "#27ae60",
                                    "#8e44ad", "#16a085", "#d35400"};

    double min_k = 1e300, max_k = 0, min_e = 1e300, max_e = 0;
    for (const PlotSeries& s : series) {
        for (const CurvePoint& p : s.points) {
            if (p.error <= 0.0) continue;
            min_k = std::min(min_k, static_cast<double>(p.k));
            max_k = std::max(max_k, static_cast<double>(p.k));
            min_e = std::min(min_e, p.error);
            max_e = std::max(max_e, p.error);
        }
    }
    if (max_k <= 0.0 || max_e <= 0.0) {
        min_k = 1, max_k = 10, min_e = 0.1, max_e = 1;
    }
    if (min_k == max_k) max_k = min_k * 10;
    if (min_e == max_e) max_e = min_e * 10;

    const double lx0 = std::log10(min_k), lx1 = std::log10(max_k);
    const double ly0 = std::log10(min_e), ly1 = std::log10(max_e);
    auto sx = [&](double k) {
        return kLeft + (std::log10(k) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
    };
    auto sy = [&](double e) {
        return kHeight - kBottom -
               (std::log10(e) - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom);
    };

    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // Decade grid lines.
    for (int e = static_cast<int>(std::floor(lx0)); e <= std::ceil(lx1); ++e) {
        const double k = std::pow(10.0, e);
        if (k < min_k || k > max_k) continue;
        out << "<line x1=\"" << sx(k) << "\" y1=\"" << kTop << "\" x2=\"" << sx(k)
            << "\" y2=\"" << kHeight - kBottom
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << sx(k) << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">1e"
            << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(ly0)); e <= std::ceil(ly1); ++e) {
        const double v = std::pow(10.0, e);
        if (v < min_e || v > max_e) continue;
        out << "<line x1=\"" << kLeft << "\" y1=\"" << sy(v) << "\" x2=\""
            << kWidth - kRight << "\" y2=\"" << sy(v)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(v) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
            << e << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
        << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">episodes k</text>\n";

    int color = 0;
    double legend_y = kTop + 16;
    for (const PlotSeries& s : series) {
        const char* stroke = kColors[color % 6];
        const bool dashed = s.label == "minimax_ref";
        out << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.8\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "")
            << " points=\"";
        for (const CurvePoint& p : s.points) {
            if (p.error <= 0.0) continue;
            out << sx(p.k) << ',' << sy(p.error) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\""
            << stroke << "\">" << s.label << "</text>\n";
        legend_y += 16;
        ++color;
    }
    out << "</svg>\n";
}

}  // namespace gapex
