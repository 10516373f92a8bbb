#pragma once

#include <cstdint>
#include <vector>

#include "gapex/mdp.hpp"

namespace gapex {

/// Visitation statistics N(x,a) and N(x,a,y), the sufficient statistic of a
/// trajectory history.
struct VisitCounts {
    int num_states = 0;
    int num_actions = 0;
    std::vector<std::int64_t> n_sa;   // [x][a]
    std::vector<std::int64_t> n_say;  // [x][a][y]
    std::int64_t episodes_absorbed = 0;

    static VisitCounts zeros(int S, int A);

    std::int64_t at(state_t x, action_t a) const {
        return n_sa[static_cast<std::size_t>(x) * num_actions + a];
    }
    std::int64_t at(state_t x, action_t a, state_t y) const {
        return n_say[(static_cast<std::size_t>(x) * num_actions + a) * num_states + y];
    }
};

/// Empirical transition model: count ratios on visited rows, uniform 1/S on
/// unvisited ones.
struct EmpiricalTransition {
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> p_hat;  // [x][a][y]

    const double* row(state_t x, action_t a) const {
        return p_hat.data() + (static_cast<std::size_t>(x) * num_actions + a) * num_states;
    }
};

/// Adds one trajectory's transitions, including the one out of the final
/// step, and bumps the episode counter.
void absorb_trajectory(VisitCounts& counts, const Trajectory& traj);

EmpiricalTransition empirical_transition(const VisitCounts& counts);

}  // namespace gapex
