#pragma once

#include <utility>
#include <vector>

#include "gapex/counts.hpp"
#include "gapex/dp.hpp"
#include "gapex/explore.hpp"
#include "gapex/mdp.hpp"

namespace gapex {

/// Hoeffding planning bonus sqrt(H^2 iota / (2 N)); N = 0 pairs get the
/// sentinel H.
std::vector<double> planning_bonus(const VisitCounts& counts, double iota, int H);

struct PlanOptions {
    double delta = 0.1;
    // kSimplified drops constants and log factors from the bonus (iota = 1),
    // matching the simplified exploration bonus in benchmark runs.
    BonusMode bonus_mode = BonusMode::kFull;
};

/// Greedy policies recovered from optimistic planning at a set of episode
/// checkpoints. The policy at checkpoint k is computed from the counts of
/// the first k-1 episodes.
///
/// The mixture the planner is approximating at checkpoint k is the uniform
/// draw over the per-episode policies pi^1..pi^k. When planning only at
/// checkpoints, each checkpoint policy stands in for the episode segment up
/// to the next checkpoint, so mixture weights are proportional to segment
/// lengths. With checkpoints {1..K} this is exactly the uniform mixture.
struct PlanningResult {
    std::vector<int> checkpoints;               // ascending, in [1, K]
    std::vector<DeterministicPolicy> policies;  // one per checkpoint
    std::vector<ValueTables> tables;            // optimistic Q/V per checkpoint
    int total_episodes = 0;                     // K
};

/// One planning step: empirical model + Hoeffding bonus + capped DP, then
/// the greedy policy.
std::pair<ValueTables, DeterministicPolicy> plan_at(const VisitCounts& counts,
                                                    const RewardFn& reward,
                                                    double iota, int H);

/// Replays the history prefix-by-prefix and plans at each checkpoint.
PlanningResult plan(const History& history, const RewardFn& reward,
                    const PlanOptions& opt, const std::vector<int>& checkpoints);

/// Same, but from counts snapshots recorded during exploration (avoids the
/// O(K^2) replay of per-episode planning over a long run).
PlanningResult plan_from_snapshots(const std::vector<CountsSnapshot>& snapshots,
                                   int total_episodes, const RewardFn& reward,
                                   const PlanOptions& opt);

/// Episode weights of each checkpoint policy inside the k_j-episode mixture,
/// j = upto_index. Weights sum to checkpoints[upto_index].
std::vector<std::int64_t> mixture_weights(const std::vector<int>& checkpoints,
                                          std::size_t upto_index);

/// The mixture at a checkpoint as an explicit uniform mixture (components
/// repeated according to their weights). Intended for small k.
MixturePolicy mixture_at(const PlanningResult& result, std::size_t upto_index);

/// V*_1(x_1) minus the mixture value at every checkpoint, evaluated exactly
/// against the true MDP. Purely an evaluation step; planning itself never
/// touches the true model.
std::vector<double> planning_errors(const PlanningResult& result,
                                    const TabularMdp& mdp, const RewardFn& reward);

/// Default checkpoint schedule {1, 2, 4, ..., K}.
std::vector<int> geometric_checkpoints(int K);

}  // namespace gapex
