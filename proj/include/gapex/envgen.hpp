#pragma once

#include <cstdint>
#include <vector>

#include "gapex/mdp.hpp"

namespace gapex {

/// State-index layout of the layered lower-bound instance. The instance is a
/// deterministic A-ary routing tree over S leaf models (green states), each
/// model forwarding to its own left-orange state with probability eps/rho
/// (else to a shared zero sink). One model hides a second-best special
/// action, one hides the best one; reward sits on the shared absorbing
/// left-blue state.
struct HardInstanceLayout {
    int tree_depth = 0;                     // d, number of routing steps
    std::vector<int> level_offsets;         // first state id of each tree level
    std::vector<int> level_sizes;
    std::vector<state_t> green;             // S leaves
    std::vector<state_t> left_orange;       // one per model
    state_t left_blue = 0;
    state_t right_blue = 0;
    state_t right_orange = 0;
    int type1_leaf = 0;                     // model with the rho/(2H) edge
    int type2_leaf = 1;                     // model with the rho/H edge
    int orange_step = 0;                    // 0-based step at which left-orange is reached
    int num_states = 0;
};

struct HardInstance {
    TabularMdp mdp;
    RewardFn reward;
    HardInstanceLayout layout;
};

/// Builds the layered instance with total horizon d + 2 + H, where H is the
/// payout length of the left-blue state. Requires S >= 5, A >= 2, H >= 2,
/// 0 < epsilon < rho < 1. The two special leaves may be repositioned to
/// check placement symmetry.
HardInstance hard_instance(int S, int A, int H, double rho, double epsilon,
                           int type1_leaf = 0, int type2_leaf = 1);

struct Gridworld {
    TabularMdp mdp;
    RewardFn reward;
    state_t x_star = 0;
    action_t a_star = 0;
    int rejections = 0;  // seeds discarded by the gap verification loop
};

/// Random dense MDP with one rewarding state x*, reachable only through a
/// special action at the initial state and at x* itself; the initial state
/// is never revisited. Each candidate is checked by exact DP to have minimum
/// positive gap >= rho and resampled otherwise.
Gridworld random_gridworld(int H, int S, int A, double rho, std::uint64_t seed);

struct BanditEnv {
    TabularMdp mdp;
    RewardFn reward;
};

/// One-state, one-step MDP whose reward row equals the arm means.
BanditEnv bandit_as_mdp(const std::vector<double>& means);

}  // namespace gapex
