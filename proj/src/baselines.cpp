#include "gapex/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "gapex/counts.hpp"
#include "gapex/dp.hpp"
#include "gapex/simulate.hpp"

namespace gapex {

action_t mab_uniform_explore(const BernoulliBandit& bandit, std::int64_t T, Rng& rng,
                             std::vector<std::int64_t>* pulls_out) {
    const int A = static_cast<int>(bandit.means.size());
    if (A == 0) throw ShapeMismatch("bandit has no arms");
    if (T < A) throw ShapeMismatch("budget smaller than the number of arms");
    const std::int64_t pulls = T / A;
    if (pulls_out) pulls_out->assign(A, pulls);
    action_t best = 0;
    std::int64_t best_sum = -1;
    for (action_t a = 0; a < A; ++a) {
        std::int64_t sum = 0;
        for (std::int64_t i = 0; i < pulls; ++i) {
            sum += rng.bernoulli(bandit.means[a]) ? 1 : 0;
        }
        if (sum > best_sum) {
            best_sum = sum;
            best = a;
        }
    }
    return best;
}

DeterministicPolicy simulator_uniform(const TabularMdp& mdp, const RewardFn& reward,
                                      std::int64_t samples_per_pair, Rng& rng) {
    if (samples_per_pair < 1) throw ShapeMismatch("need at least one sample per pair");
    require_reward_shape(mdp, reward);

    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    std::vector<std::int64_t> hits(static_cast<std::size_t>(S), 0);
    std::vector<double> p_hat(static_cast<std::size_t>(S) * A * S, 0.0);
    const double inv = 1.0 / static_cast<double>(samples_per_pair);
    for (state_t x = 0; x < S; ++x) {
        for (action_t a = 0; a < A; ++a) {
            std::fill(hits.begin(), hits.end(), 0);
            for (std::int64_t i = 0; i < samples_per_pair; ++i) {
                hits[sample_next(mdp, x, a, rng)] += 1;
            }
            const std::size_t base = (static_cast<std::size_t>(x) * A + a) * S;
            for (state_t y = 0; y < S; ++y) {
                p_hat[base + y] = static_cast<double>(hits[y]) * inv;
            }
        }
    }

    InductionOptions opt;
    opt.reward = &reward;
    const ValueTables tables =
        backward_induction(S, A, mdp.horizon, p_hat.data(), opt);
    return greedy_policy(tables);
}

std::int64_t simulator_sample_bound(int S, int A, int H, double rho, double delta) {
    const double h4 = std::pow(static_cast<double>(H), 4);
    const double bound =
        2.0 * h4 * S * A / (rho * rho) * std::log(2.0 * H * S * A / delta);
    return static_cast<std::int64_t>(std::ceil(bound));
}

ExploreResult unclipped_explore(const TabularMdp& mdp, const ExplorationConfig& cfg,
                                const std::vector<int>& snapshot_checkpoints) {
    ExplorationConfig unclipped = cfg;
    unclipped.clip_enabled = false;
    return explore(mdp, unclipped, snapshot_checkpoints);
}

}  // namespace gapex
