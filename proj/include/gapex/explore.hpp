#pragma once

#include <cstdint>
#include <vector>

#include "gapex/counts.hpp"
#include "gapex/dp.hpp"
#include "gapex/mdp.hpp"

namespace gapex {

/// The two bonus variants. kFull is the three-term clipped confidence bonus;
/// kSimplified keeps the two leading terms with all absolute constants and
/// log factors set to 1 and is meant for benchmark runs.
enum class BonusMode { kFull, kSimplified };

/// How the behavior policy resolves exactly tied greedy values. Early on,
/// the value cap ties whole Q rows at H; always taking the smallest index
/// then starves every other action of visits (states reachable only at early
/// steps may never see a second action), so the seeded-random rule is the
/// default. Planning-side greedy policies always use the smallest index.
enum class TieBreak { kRandom, kSmallestIndex };

struct ExplorationConfig {
    double rho = 0.1;       // known lower bound on the minimum positive gap
    int episodes = 1;       // K
    double delta = 0.1;     // failure probability
    BonusMode bonus_mode = BonusMode::kFull;
    std::uint64_t seed = 0;
    // When false the clip threshold is 0, i.e. the square-root term is never
    // zeroed; used by the worst-case comparator baseline.
    bool clip_enabled = true;
    TieBreak tie_break = TieBreak::kRandom;
};

/// Shared log factor iota = log(2 H S^2 A K / delta).
double iota_constant(int H, int S, int A, int K, double delta);

/// Clipped visitation bonus per (x, a); pairs with N = 0 get the sentinel H,
/// which the capped DP turns into a maximally attractive value.
std::vector<double> exploration_bonus(const VisitCounts& counts,
                                      const ExplorationConfig& cfg, int H,
                                      double iota);

/// Capped backward induction Q = min{H, r + b + P_hat V} on the empirical
/// model; reward may be null (reward-free phase).
ValueTables ucbq(const EmpiricalTransition& p_hat, const RewardFn* reward,
                 const std::vector<double>& bonus, int H);

/// Same recursion but following a fixed policy instead of maximizing.
ValueTables ucbq_under_policy(const EmpiricalTransition& p_hat, const RewardFn* reward,
                              const std::vector<double>& bonus, int H,
                              const DeterministicPolicy& policy);

/// Counts of the first (checkpoint_k - 1) episodes, as seen by the planner
/// at episode checkpoint_k.
struct CountsSnapshot {
    int checkpoint_k = 0;
    VisitCounts counts;
};

struct ExplorationLog {
    std::vector<double> episode_values;  // greedy bonus value at x1, per episode
    std::vector<CountsSnapshot> snapshots;
    VisitCounts final_counts;
};

struct ExploreResult {
    History history;
    ExplorationLog log;
};

/// Runs the K-episode reward-free loop: per episode, rebuild the empirical
/// model and bonus, run the capped DP with zero reward, act greedily, absorb
/// the trajectory. Snapshots are taken for each requested checkpoint k just
/// before episode k runs.
ExploreResult explore(const TabularMdp& mdp, const ExplorationConfig& cfg,
                      const std::vector<int>& snapshot_checkpoints = {});

}  // namespace gapex
