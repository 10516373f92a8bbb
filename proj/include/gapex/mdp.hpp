#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapex {

using state_t = int;
using action_t = int;

// Tolerance for row-stochasticity checks.
inline constexpr double kRowSumTol = 1e-9;
// Gap entries below this are treated as zero when searching for the minimum
// positive gap.
inline constexpr double kGapFloor = 1e-12;

struct MdpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonStochasticRow : MdpError {
    state_t x;
    action_t a;
    double row_sum;
    NonStochasticRow(state_t x_, action_t a_, double sum_);
};

struct NegativeProbability : MdpError {
    state_t x;
    action_t a;
    state_t y;
    double value;
    NegativeProbability(state_t x_, action_t a_, state_t y_, double v_);
};

struct BadInitialState : MdpError {
    explicit BadInitialState(state_t x1, int num_states);
};

struct ShapeMismatch : MdpError {
    using MdpError::MdpError;
};

struct TooLarge : MdpError {
    using MdpError::MdpError;
};

struct InfeasibleParams : MdpError {
    using MdpError::MdpError;
};

/// Finite-horizon MDP: S states, A actions, H steps per episode, a
/// stationary transition kernel and a fixed initial state.
struct TabularMdp {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    state_t initial_state = 0;
    // Dense transition probabilities, laid out [x][a][y].
    std::vector<double> transition;

    std::size_t row_index(state_t x, action_t a) const {
        return (static_cast<std::size_t>(x) * num_actions + a) * num_states;
    }
    double p(state_t x, action_t a, state_t y) const {
        return transition[row_index(x, a) + y];
    }
    double& p(state_t x, action_t a, state_t y) {
        return transition[row_index(x, a) + y];
    }
    const double* row(state_t x, action_t a) const {
        return transition.data() + row_index(x, a);
    }
};

/// Deterministic per-step reward table r[h][x][a], entries in [0,1].
struct RewardFn {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> r;  // [h][x][a]

    static RewardFn zeros(int H, int S, int A);

    double at(int h, state_t x, action_t a) const {
        return r[(static_cast<std::size_t>(h) * num_states + x) * num_actions + a];
    }
    double& at(int h, state_t x, action_t a) {
        return r[(static_cast<std::size_t>(h) * num_states + x) * num_actions + a];
    }
};

/// Deterministic policy: one action per (step, state).
struct DeterministicPolicy {
    int horizon = 0;
    int num_states = 0;
    std::vector<action_t> action;  // [h][x]

    static DeterministicPolicy constant(int H, int S, action_t a);

    action_t at(int h, state_t x) const {
        return action[static_cast<std::size_t>(h) * num_states + x];
    }
    action_t& at(int h, state_t x) {
        return action[static_cast<std::size_t>(h) * num_states + x];
    }
};

/// Uniform mixture over deterministic policies.
struct MixturePolicy {
    std::vector<DeterministicPolicy> components;
};

struct Step {
    state_t state;
    action_t action;
};

/// One episode: the H visited (state, action) pairs plus the state reached
/// after each step (including the one after the final step).
struct Trajectory {
    std::vector<Step> steps;
    std::vector<state_t> next_states;
};

/// Exploration dataset: K trajectories in collection order.
struct History {
    std::vector<Trajectory> trajectories;
    int episodes() const { return static_cast<int>(trajectories.size()); }
};

/// Checks all TabularMdp invariants; throws NonStochasticRow,
/// NegativeProbability or BadInitialState on violation.
void validate_mdp(const TabularMdp& mdp);

void require_reward_shape(const TabularMdp& mdp, const RewardFn& reward);
void require_policy_shape(const TabularMdp& mdp, const DeterministicPolicy& policy);

}  // namespace gapex
