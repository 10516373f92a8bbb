#include "gapex/mdp.hpp"

#include <cmath>

namespace gapex {

namespace {
std::string row_message(state_t x, action_t a, double sum) {
    return "transition row (" + std::to_string(x) + "," + std::to_string(a) +
           ") sums to " + std::to_string(sum);
}
}  // namespace

NonStochasticRow::NonStochasticRow(state_t x_, action_t a_, double sum_)
    : MdpError(row_message(x_, a_, sum_)), x(x_), a(a_), row_sum(sum_) {}

NegativeProbability::NegativeProbability(state_t x_, action_t a_, state_t y_, double v_)
    : MdpError("negative probability " + std::to_string(v_) + " at (" +
               std::to_string(x_) + "," + std::to_string(a_) + "," +
               std::to_string(y_) + ")"),
      x(x_), a(a_), y(y_), value(v_) {}

BadInitialState::BadInitialState(state_t x1, int num_states)
    : MdpError("initial state " + std::to_string(x1) + " out of range [0," +
               std::to_string(num_states) + ")") {}

RewardFn RewardFn::zeros(int H, int S, int A) {
    RewardFn out;
    out.horizon = H;
    out.num_states = S;
    out.num_actions = A;
    out.r.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    return out;
}

DeterministicPolicy DeterministicPolicy::constant(int H, int S, action_t a) {
    DeterministicPolicy out;
    out.horizon = H;
    out.num_states = S;
    out.action.assign(static_cast<std::size_t>(H) * S, a);
    return out;
}

void validate_mdp(const TabularMdp& mdp) {
    if (mdp.num_states <= 0 || mdp.num_actions <= 0 || mdp.horizon <= 0) {
        throw ShapeMismatch("num_states, num_actions and horizon must be positive");
    }
    if (mdp.initial_state < 0 || mdp.initial_state >= mdp.num_states) {
        throw BadInitialState(mdp.initial_state, mdp.num_states);
    }
    const std::size_t expected =
        static_cast<std::size_t>(mdp.num_states) * mdp.num_actions * mdp.num_states;
    if (mdp.transition.size() != expected) {
        throw ShapeMismatch("transition tensor has wrong size");
    }
    for (state_t x = 0; x < mdp.num_states; ++x) {
        for (action_t a = 0; a < mdp.num_actions; ++a) {
            const double* row = mdp.row(x, a);
            double sum = 0.0;
            for (state_t y = 0; y < mdp.num_states; ++y) {
                if (row[y] < 0.0) throw NegativeProbability(x, a, y, row[y]);
                sum += row[y];
            }
            if (std::abs(sum - 1.0) > kRowSumTol) throw NonStochasticRow(x, a, sum);
        }
    }
}

void require_reward_shape(const TabularMdp& mdp, const RewardFn& reward) {
    if (reward.horizon != mdp.horizon || reward.num_states != mdp.num_states ||
        reward.num_actions != mdp.num_actions ||
        reward.r.size() != static_cast<std::size_t>(mdp.horizon) * mdp.num_states * mdp.num_actions) {
        throw ShapeMismatch("reward table does not match MDP shape");
    }
}

void require_policy_shape(const TabularMdp& mdp, const DeterministicPolicy& policy) {
    if (policy.horizon != mdp.horizon || policy.num_states != mdp.num_states ||
        policy.action.size() != static_cast<std::size_t>(mdp.horizon) * mdp.num_states) {
        throw ShapeMismatch("policy does not match MDP shape");
    }
    for (action_t a : policy.action) {
        if (a < 0 || a >= mdp.num_actions) {
            throw ShapeMismatch("policy action out of range");
        }
    }
}

}  // namespace gapex
