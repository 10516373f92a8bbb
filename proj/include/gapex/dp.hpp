#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "gapex/mdp.hpp"

namespace gapex {

/// Q and V arrays from a backward-induction pass. v has H+1 rows with the
/// terminal row fixed at zero.
struct ValueTables {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> q;  // [h][x][a], h in [0,H)
    std::vector<double> v;  // [h][x],    h in [0,H]

    double q_at(int h, state_t x, action_t a) const {
        return q[(static_cast<std::size_t>(h) * num_states + x) * num_actions + a];
    }
    double v_at(int h, state_t x) const {
        return v[static_cast<std::size_t>(h) * num_states + x];
    }
};

/// Per-(step, state, action) sub-optimality gaps V*[h][x] - Q*[h][x][a] and
/// the smallest strictly positive entry (entries below kGapFloor count as
/// zero). gap_min is +infinity when every entry is zero.
struct GapReport {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> gap;  // [h][x][a]
    double gap_min = std::numeric_limits<double>::infinity();
    // Set when a claimed lower bound was supplied: claim <= gap_min.
    std::optional<bool> rho_claim_ok;

    double at(int h, state_t x, action_t a) const {
        return gap[(static_cast<std::size_t>(h) * num_states + x) * num_actions + a];
    }
};

/// z if z >= rho, else 0 (inclusive boundary).
inline double clip(double z, double rho) { return z >= rho ? z : 0.0; }

/// Options for a generic backward-induction pass over a dense transition
/// tensor of the MDP's shape. Covers plain optimal DP, policy evaluation,
/// and capped bonus-augmented DP.
struct InductionOptions {
    const RewardFn* reward = nullptr;            // null: identically zero
    const std::vector<double>* bonus = nullptr;  // per (x,a), step-independent
    double cap = -1.0;                           // negative: no per-entry cap
    const DeterministicPolicy* follow = nullptr; // null: maximize over actions
};

ValueTables backward_induction(int S, int A, int H, const double* transition,
                               const InductionOptions& opt);
/// Reference implementation without OpenMP, kept for equivalence tests and
/// the kernel benchmark.
ValueTables backward_induction_serial(int S, int A, int H, const double* transition,
                                      const InductionOptions& opt);

/// Optimal Q*/V* by backward induction on the true transition kernel.
ValueTables optimal_values(const TabularMdp& mdp, const RewardFn& reward);

/// Q^pi/V^pi for a fixed deterministic policy.
ValueTables policy_value(const TabularMdp& mdp, const RewardFn& reward,
                         const DeterministicPolicy& policy);

/// Exact value of a uniform mixture: the mean of the component values at the
/// initial state.
double mixture_value(const TabularMdp& mdp, const RewardFn& reward,
                     const MixturePolicy& mix);

/// Greedy policy of a Q table, ties broken toward the smallest action index.
DeterministicPolicy greedy_policy(const ValueTables& tables);

GapReport gaps(const TabularMdp& mdp, const RewardFn& reward,
               std::optional<double> rho_claim = std::nullopt);

/// Test oracle: enumerates every deterministic policy and returns the best
/// initial-state value. Throws TooLarge when A^(S*H) exceeds 1e6. Evaluates
/// policies by direct recursion, independent of backward_induction.
double brute_force_optimal(const TabularMdp& mdp, const RewardFn& reward);

}  // namespace gapex
