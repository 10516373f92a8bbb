#pragma once

#include <vector>

#include "gapex/mdp.hpp"
#include "gapex/rng.hpp"

namespace gapex::testutil {

inline TabularMdp random_mdp(int S, int A, int H, Rng& rng) {
    TabularMdp mdp;
    mdp.num_states = S;
    mdp.num_actions = A;
    mdp.horizon = H;
    mdp.initial_state = 0;
    mdp.transition.assign(static_cast<std::size_t>(S) * A * S, 0.0);
    for (state_t x = 0; x < S; ++x) {
        for (action_t a = 0; a < A; ++a) {
            double total = 0.0;
            for (state_t y = 0; y < S; ++y) {
                const double w = rng.next_double() + 1e-9;
                mdp.p(x, a, y) = w;
                total += w;
            }
            for (state_t y = 0; y < S; ++y) mdp.p(x, a, y) /= total;
        }
    }
    return mdp;
}

inline RewardFn random_reward(int H, int S, int A, Rng& rng) {
    RewardFn reward = RewardFn::zeros(H, S, A);
    for (double& v : reward.r) v = rng.next_double();
    return reward;
}

inline DeterministicPolicy random_policy(int H, int S, int A, Rng& rng) {
    DeterministicPolicy policy = DeterministicPolicy::constant(H, S, 0);
    for (action_t& a : policy.action) a = rng.next_below(A);
    return policy;
}

/// Chain MDP that advances deterministically: state i -> i+1 (capped at the
/// last state) under every action.
inline TabularMdp chain_mdp(int S, int A, int H) {
    TabularMdp mdp;
    mdp.num_states = S;
    mdp.num_actions = A;
    mdp.horizon = H;
    mdp.initial_state = 0;
    mdp.transition.assign(static_cast<std::size_t>(S) * A * S, 0.0);
    for (state_t x = 0; x < S; ++x) {
        const state_t next = x + 1 < S ? x + 1 : x;
        for (action_t a = 0; a < A; ++a) mdp.p(x, a, next) = 1.0;
    }
    return mdp;
}

}  // namespace gapex::testutil
