#include "gapex/plan.hpp"

#include <algorithm>
#include <cmath>

namespace gapex {

std::vector<double> planning_bonus(const VisitCounts& counts, double iota, int H) {
    if (iota <= 0.0) throw ShapeMismatch("iota must be positive");
    const double h2 = static_cast<double>(H) * H;
    std::vector<double> bonus(counts.n_sa.size());
    for (std::size_t i = 0; i < bonus.size(); ++i) {
        const double n = static_cast<double>(counts.n_sa[i]);
        bonus[i] = n == 0.0 ? static_cast<double>(H) : std::sqrt(h2 * iota / (2.0 * n));
    }
    return bonus;
}

std::pair<ValueTables, DeterministicPolicy> plan_at(const VisitCounts& counts,
                                                    const RewardFn& reward,
                                                    double iota, int H) {
    const EmpiricalTransition p_hat = empirical_transition(counts);
    const std::vector<double> bonus = planning_bonus(counts, iota, H);
    ValueTables tables = ucbq(p_hat, &reward, bonus, H);
    DeterministicPolicy policy = greedy_policy(tables);
    return {std::move(tables), std::move(policy)};
}

namespace {

double planning_iota(const PlanOptions& opt, int H, int S, int A, int K) {
    if (opt.bonus_mode == BonusMode::kSimplified) return 1.0;
    return iota_constant(H, S, A, K, opt.delta);
}

void check_checkpoints(const std::vector<int>& checkpoints, int K) {
    if (checkpoints.empty()) throw ShapeMismatch("no planning checkpoints given");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > K) {
            throw ShapeMismatch("checkpoint outside [1, K]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ShapeMismatch("checkpoints must be strictly increasing");
        }
    }
}

}  // namespace

PlanningResult plan(const History& history, const RewardFn& reward,
                    const PlanOptions& opt, const std::vector<int>& checkpoints) {
    const int K = history.episodes();
    if (K == 0) throw ShapeMismatch("history is empty");
    check_checkpoints(checkpoints, K);

    const int H = reward.horizon;
    const int S = reward.num_states;
    const int A = reward.num_actions;
    const double iota = planning_iota(opt, H, S, A, K);

    PlanningResult result;
    result.checkpoints = checkpoints;
    result.total_episodes = K;

    VisitCounts counts = VisitCounts::zeros(S, A);
    std::size_t next = 0;
    for (int k = 1; k <= K && next < checkpoints.size(); ++k) {
        if (checkpoints[next] == k) {
            auto [tables, policy] = plan_at(counts, reward, iota, H);
            result.tables.push_back(std::move(tables));
            result.policies.push_back(std::move(policy));
            ++next;
        }
        absorb_trajectory(counts, history.trajectories[k - 1]);
    }
    return result;
}

PlanningResult plan_from_snapshots(const std::vector<CountsSnapshot>& snapshots,
                                   int total_episodes, const RewardFn& reward,
                                   const PlanOptions& opt) {
    if (snapshots.empty()) throw ShapeMismatch("no counts snapshots given");

    const int H = reward.horizon;
    const int S = reward.num_states;
    const int A = reward.num_actions;
    const double iota = planning_iota(opt, H, S, A, total_episodes);

    PlanningResult result;
    result.total_episodes = total_episodes;
    for (const CountsSnapshot& snap : snapshots) {
        if (snap.counts.episodes_absorbed != snap.checkpoint_k - 1) {
            throw ShapeMismatch("snapshot does not hold the first k-1 episodes");
        }
        result.checkpoints.push_back(snap.checkpoint_k);
        auto [tables, policy] = plan_at(snap.counts, reward, iota, H);
        result.tables.push_back(std::move(tables));
        result.policies.push_back(std::move(policy));
    }
    check_checkpoints(result.checkpoints, total_episodes);
    return result;
}

std::vector<std::int64_t> mixture_weights(const std::vector<int>& checkpoints,
                                          std::size_t upto_index) {
    if (upto_index >= checkpoints.size()) {
        throw ShapeMismatch("checkpoint index out of range");
    }
    // Episodes j in [k_i, k_{i+1}) are represented by the policy planned at
    // k_i; the final checkpoint covers only itself.
    std::vector<std::int64_t> weights(upto_index + 1, 0);
    for (std::size_t i = 0; i <= upto_index; ++i) {
        const std::int64_t lo = checkpoints[i];
        const std::int64_t hi =
            i == upto_index ? checkpoints[upto_index] + 1 : checkpoints[i + 1];
        weights[i] = hi - lo;
    }
    // Episodes before the first checkpoint fall to the first policy.
    weights[0] += checkpoints[0] - 1;
    return weights;
}

MixturePolicy mixture_at(const PlanningResult& result, std::size_t upto_index) {
    const auto weights = mixture_weights(result.checkpoints, upto_index);
    MixturePolicy mix;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::int64_t c = 0; c < weights[i]; ++c) {
            mix.components.push_back(result.policies[i]);
        }
    }
    return mix;
}

std::vector<double> planning_errors(const PlanningResult& result,
                                    const TabularMdp& mdp, const RewardFn& reward) {
    const double v_star =
        optimal_values(mdp, reward).v_at(0, mdp.initial_state);
    std::vector<double> component_values(result.policies.size());
    for (std::size_t i = 0; i < result.policies.size(); ++i) {
        component_values[i] =
            policy_value(mdp, reward, result.policies[i]).v_at(0, mdp.initial_state);
    }
    std::vector<double> errors(result.checkpoints.size());
    for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
        const auto weights = mixture_weights(result.checkpoints, j);
        double value = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            value += static_cast<double>(weights[i]) * component_values[i];
        }
        value /= static_cast<double>(result.checkpoints[j]);
        errors[j] = v_star - value;
    }
    return errors;
}

std::vector<int> geometric_checkpoints(int K) {
    std::vector<int> out;
    for (int k = 1; k <= K; k *= 2) {
        out.push_back(k);
        if (k > K / 2) break;
    }
    if (out.empty() || out.back() != K) out.push_back(K);
    return out;
}

}  // namespace gapex
