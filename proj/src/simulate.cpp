#include "gapex/simulate.hpp"

namespace gapex {

state_t sample_next(const TabularMdp& mdp, state_t x, action_t a, Rng& rng) {
    const double* row = mdp.row(x, a);
    const double u = rng.next_double();
    double cum = 0.0;
    state_t last_positive = 0;
    for (state_t y = 0; y < mdp.num_states; ++y) {
        if (row[y] > 0.0) last_positive = y;
        cum += row[y];
        if (u < cum) return y;
    }
    // u landed past the accumulated mass (rounding); return the last state
    // carrying probability.
    return last_positive;
}

Trajectory rollout(const TabularMdp& mdp, const DeterministicPolicy& policy, Rng& rng) {
    require_policy_shape(mdp, policy);
    Trajectory traj;
    traj.steps.reserve(mdp.horizon);
    traj.next_states.reserve(mdp.horizon);
    state_t x = mdp.initial_state;
    for (int h = 0; h < mdp.horizon; ++h) {
        const action_t a = policy.at(h, x);
        traj.steps.push_back({x, a});
        const state_t y = sample_next(mdp, x, a, rng);
        traj.next_states.push_back(y);
        x = y;
    }
    return traj;
}

}  // namespace gapex
