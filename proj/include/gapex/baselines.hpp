#pragma once

#include <cstdint>
#include <vector>

#include "gapex/explore.hpp"
#include "gapex/mdp.hpp"
#include "gapex/rng.hpp"

namespace gapex {

struct BernoulliBandit {
    std::vector<double> means;  // per-arm success probabilities in [0,1]
};

/// Pulls every arm floor(T/A) times with Bernoulli rewards and returns the
/// arm with the highest empirical mean (ties toward the smaller index). Any
/// budget remainder is dropped; pulls_out, when given, receives the per-arm
/// pull counts.
action_t mab_uniform_explore(const BernoulliBandit& bandit, std::int64_t T, Rng& rng,
                             std::vector<std::int64_t>* pulls_out = nullptr);

/// Simulator-based exploration: draws `samples_per_pair` next states at
/// every (x, a), then plans greedily by plain DP on the empirical model.
DeterministicPolicy simulator_uniform(const TabularMdp& mdp, const RewardFn& reward,
                                      std::int64_t samples_per_pair, Rng& rng);

/// Total sample budget ceil((2 H^4 S A / rho^2) log(2 H S A / delta)) above
/// which the simulator plug-in policy is exactly optimal with probability at
/// least 1 - delta.
std::int64_t simulator_sample_bound(int S, int A, int H, double rho, double delta);

/// Worst-case comparator: the exploration loop with the clip threshold set
/// to zero, so the square-root bonus term is never cut.
ExploreResult unclipped_explore(const TabularMdp& mdp, const ExplorationConfig& cfg,
                                const std::vector<int>& snapshot_checkpoints = {});

}  // namespace gapex
