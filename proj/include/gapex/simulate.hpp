#pragma once

#include "gapex/mdp.hpp"
#include "gapex/rng.hpp"

namespace gapex {

/// Draws the next state from the transition row of (x, a).
state_t sample_next(const TabularMdp& mdp, state_t x, action_t a, Rng& rng);

/// Plays one episode from the initial state following `policy`.
Trajectory rollout(const TabularMdp& mdp, const DeterministicPolicy& policy, Rng& rng);

}  // namespace gapex
