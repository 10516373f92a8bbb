#include "gapex/explore.hpp"

#include <algorithm>
#include <cmath>

#include "gapex/rng.hpp"
#include "gapex/simulate.hpp"

namespace gapex {

double iota_constant(int H, int S, int A, int K, double delta) {
    return std::log(2.0 * H * static_cast<double>(S) * S * A * K / delta);
}

std::vector<double> exploration_bonus(const VisitCounts& counts,
                                      const ExplorationConfig& cfg, int H,
                                      double iota) {
    const int S = counts.num_states;
    const int A = counts.num_actions;
    const double threshold = cfg.clip_enabled ? cfg.rho / (2.0 * H) : 0.0;
    const double h2 = static_cast<double>(H) * H;
    const double h3 = h2 * H;
    const double h6 = h3 * h3;
    std::vector<double> bonus(static_cast<std::size_t>(S) * A);
    for (std::size_t i = 0; i < bonus.size(); ++i) {
        const double n = static_cast<double>(counts.n_sa[i]);
        if (n == 0.0) {
            bonus[i] = static_cast<double>(H);
            continue;
        }
        if (cfg.bonus_mode == BonusMode::kFull) {
            bonus[i] = clip(std::sqrt(8.0 * h2 * iota / n), threshold) +
                       120.0 * (S + H) * h3 * iota / n +
                       240.0 * h6 * S * S * iota * iota / (n * n);
        } else {
            bonus[i] = clip(std::sqrt(h2 / n), threshold) + (S + H) * h3 / n;
        }
    }
    return bonus;
}

namespace {

ValueTables capped_induction(const EmpiricalTransition& p_hat, const RewardFn* reward,
                             const std::vector<double>& bonus, int H,
                             const DeterministicPolicy* follow) {
    if (bonus.size() != static_cast<std::size_t>(p_hat.num_states) * p_hat.num_actions) {
        throw ShapeMismatch("bonus grid does not match model shape");
    }
    InductionOptions opt;
    opt.reward = reward;
    opt.bonus = &bonus;
    opt.cap = static_cast<double>(H);
    opt.follow = follow;
    return backward_induction(p_hat.num_states, p_hat.num_actions, H,
                              p_hat.p_hat.data(), opt);
}

}  // namespace

ValueTables ucbq(const EmpiricalTransition& p_hat, const RewardFn* reward,
                 const std::vector<double>& bonus, int H) {
    return capped_induction(p_hat, reward, bonus, H, nullptr);
}

ValueTables ucbq_under_policy(const EmpiricalTransition& p_hat, const RewardFn* reward,
                              const std::vector<double>& bonus, int H,
                              const DeterministicPolicy& policy) {
    return capped_induction(p_hat, reward, bonus, H, &policy);
}

ExploreResult explore(const TabularMdp& mdp, const ExplorationConfig& cfg,
                      const std::vector<int>& snapshot_checkpoints) {
    validate_mdp(mdp);
    if (cfg.episodes < 1) throw ShapeMismatch("episode count must be >= 1");
    if (cfg.rho <= 0.0) throw ShapeMismatch("gap parameter must be positive");
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0) {
        throw ShapeMismatch("delta must lie in (0,1)");
    }

    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    const int H = mdp.horizon;
    const double iota = iota_constant(H, S, A, cfg.episodes, cfg.delta);

    std::vector<int> checkpoints = snapshot_checkpoints;
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                      checkpoints.end());
    std::size_t next_checkpoint = 0;

    ExploreResult result;
    result.history.trajectories.reserve(cfg.episodes);
    result.log.episode_values.reserve(cfg.episodes);

    const Rng root(cfg.seed);
    VisitCounts counts = VisitCounts::zeros(S, A);

    for (int k = 1; k <= cfg.episodes; ++k) {
        while (next_checkpoint < checkpoints.size() &&
               checkpoints[next_checkpoint] == k) {
            result.log.snapshots.push_back({k, counts});
            ++next_checkpoint;
        }

        const EmpiricalTransition p_hat = empirical_transition(counts);
        const std::vector<double> bonus = exploration_bonus(counts, cfg, H, iota);
        const ValueTables tables = ucbq(p_hat, nullptr, bonus, H);

        Rng episode_rng = root.split(static_cast<std::uint64_t>(k));
        Trajectory traj;
        state_t x = mdp.initial_state;
        for (int h = 0; h < H; ++h) {
            action_t act = 0;
            if (cfg.tie_break == TieBreak::kSmallestIndex) {
                double best = tables.q_at(h, x, 0);
                for (action_t a = 1; a < A; ++a) {
                    if (tables.q_at(h, x, a) > best) {
                        best = tables.q_at(h, x, a);
                        act = a;
                    }
                }
            } else {
                // Reservoir draw over the exactly tied maximizers.
                double best = tables.q_at(h, x, 0);
                int ties = 1;
                for (action_t a = 1; a < A; ++a) {
                    const double q = tables.q_at(h, x, a);
                    if (q > best) {
                        best = q;
                        act = a;
                        ties = 1;
                    } else if (q == best && episode_rng.next_below(++ties) == 0) {
                        act = a;
                    }
                }
            }
            traj.steps.push_back({x, act});
            const state_t y = sample_next(mdp, x, act, episode_rng);
            traj.next_states.push_back(y);
            x = y;
        }
        absorb_trajectory(counts, traj);

        result.log.episode_values.push_back(tables.v_at(0, mdp.initial_state));
        result.history.trajectories.push_back(std::move(traj));
    }

    result.log.final_counts = std::move(counts);
    return result;
}

}  // namespace gapex
