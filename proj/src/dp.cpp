#include "gapex/dp.hpp"

#include <algorithm>
#include <cmath>

#include "gapex/kernels.hpp"

namespace gapex {

namespace {

template <bool UseOmp>
ValueTables induction_impl(int S, int A, int H, const double* transition,
                           const InductionOptions& opt) {
    ValueTables out;
    out.horizon = H;
    out.num_states = S;
    out.num_actions = A;
    out.q.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    out.v.assign(static_cast<std::size_t>(H + 1) * S, 0.0);

    std::vector<double> expected(static_cast<std::size_t>(S) * A);
    for (int h = H - 1; h >= 0; --h) {
        const double* v_next = out.v.data() + static_cast<std::size_t>(h + 1) * S;
        if constexpr (UseOmp) {
            kernels::expected_next(S, A, transition, v_next, expected.data());
        } else {
            kernels::expected_next_serial(S, A, transition, v_next, expected.data());
        }
        double* q_h = out.q.data() + static_cast<std::size_t>(h) * S * A;
        for (int x = 0; x < S; ++x) {
            for (int a = 0; a < A; ++a) {
                const std::size_t i = static_cast<std::size_t>(x) * A + a;
                double q = expected[i];
                if (opt.reward) q += opt.reward->at(h, x, a);
                if (opt.bonus) q += (*opt.bonus)[i];
                if (opt.cap >= 0.0 && q > opt.cap) q = opt.cap;
                q_h[i] = q;
            }
        }
        double* v_h = out.v.data() + static_cast<std::size_t>(h) * S;
        if (opt.follow) {
            for (int x = 0; x < S; ++x) {
                v_h[x] = q_h[static_cast<std::size_t>(x) * A + opt.follow->at(h, x)];
            }
        } else {
            if constexpr (UseOmp) {
                kernels::row_max(S, A, q_h, v_h, nullptr);
            } else {
                kernels::row_max_serial(S, A, q_h, v_h, nullptr);
            }
        }
    }
    return out;
}

}  // namespace

ValueTables backward_induction(int S, int A, int H, const double* transition,
                               const InductionOptions& opt) {
    return induction_impl<true>(S, A, H, transition, opt);
}

ValueTables backward_induction_serial(int S, int A, int H, const double* transition,
                                      const InductionOptions& opt) {
    return induction_impl<false>(S, A, H, transition, opt);
}

ValueTables optimal_values(const TabularMdp& mdp, const RewardFn& reward) {
    require_reward_shape(mdp, reward);
    InductionOptions opt;
    opt.reward = &reward;
    return backward_induction(mdp.num_states, mdp.num_actions, mdp.horizon,
                              mdp.transition.data(), opt);
}

ValueTables policy_value(const TabularMdp& mdp, const RewardFn& reward,
                         const DeterministicPolicy& policy) {
    require_reward_shape(mdp, reward);
    require_policy_shape(mdp, policy);
    InductionOptions opt;
    opt.reward = &reward;
    opt.follow = &policy;
    return backward_induction(mdp.num_states, mdp.num_actions, mdp.horizon,
                              mdp.transition.data(), opt);
}

double mixture_value(const TabularMdp& mdp, const RewardFn& reward,
                     const MixturePolicy& mix) {
    if (mix.components.empty()) {
        throw ShapeMismatch("mixture policy has no components");
    }
    double sum = 0.0;
    for (const auto& policy : mix.components) {
        sum += policy_value(mdp, reward, policy).v_at(0, mdp.initial_state);
    }
    return sum / static_cast<double>(mix.components.size());
}

DeterministicPolicy greedy_policy(const ValueTables& tables) {
    DeterministicPolicy policy;
    policy.horizon = tables.horizon;
    policy.num_states = tables.num_states;
    policy.action.assign(static_cast<std::size_t>(tables.horizon) * tables.num_states, 0);
    for (int h = 0; h < tables.horizon; ++h) {
        for (state_t x = 0; x < tables.num_states; ++x) {
            double best = tables.q_at(h, x, 0);
            action_t best_a = 0;
            for (action_t a = 1; a < tables.num_actions; ++a) {
                const double q = tables.q_at(h, x, a);
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            policy.at(h, x) = best_a;
        }
    }
    return policy;
}

GapReport gaps(const TabularMdp& mdp, const RewardFn& reward,
               std::optional<double> rho_claim) {
    const ValueTables tables = optimal_values(mdp, reward);
    GapReport report;
    report.horizon = mdp.horizon;
    report.num_states = mdp.num_states;
    report.num_actions = mdp.num_actions;
    report.gap.resize(tables.q.size());
    double gap_min = std::numeric_limits<double>::infinity();
    for (int h = 0; h < mdp.horizon; ++h) {
        for (state_t x = 0; x < mdp.num_states; ++x) {
            const double v = tables.v_at(h, x);
            for (action_t a = 0; a < mdp.num_actions; ++a) {
                const double g = v - tables.q_at(h, x, a);
                report.gap[(static_cast<std::size_t>(h) * mdp.num_states + x) *
                               mdp.num_actions + a] = g;
                if (g >= kGapFloor && g < gap_min) gap_min = g;
            }
        }
    }
    report.gap_min = gap_min;
    if (rho_claim) report.rho_claim_ok = (*rho_claim <= gap_min);
    return report;
}

namespace {

// Direct evaluation of one policy, by recursion on the Bellman identity.
// Deliberately does not share code with backward_induction.
double evaluate_policy_direct(const TabularMdp& mdp, const RewardFn& reward,
                              const std::vector<action_t>& actions, int h, state_t x) {
    if (h == mdp.horizon) return 0.0;
    const action_t a = actions[static_cast<std::size_t>(h) * mdp.num_states + x];
    double value = reward.at(h, x, a);
    const double* row = mdp.row(x, a);
    for (state_t y = 0; y < mdp.num_states; ++y) {
        if (row[y] > 0.0) {
            value += row[y] * evaluate_policy_direct(mdp, reward, actions, h + 1, y);
        }
    }
    return value;
}

}  // namespace

double brute_force_optimal(const TabularMdp& mdp, const RewardFn& reward) {
    require_reward_shape(mdp, reward);
    const std::size_t slots = static_cast<std::size_t>(mdp.horizon) * mdp.num_states;
    double count = 1.0;
    for (std::size_t i = 0; i < slots; ++i) {
        count *= mdp.num_actions;
        if (count > 1e6) {
            throw TooLarge("policy enumeration would exceed 1e6 candidates");
        }
    }
    std::vector<action_t> actions(slots, 0);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        const double value =
            evaluate_policy_direct(mdp, reward, actions, 0, mdp.initial_state);
        best = std::max(best, value);
        // Advance the mixed-radix odometer over action assignments.
        std::size_t i = 0;
        while (i < slots) {
            if (++actions[i] < mdp.num_actions) break;
            actions[i] = 0;
            ++i;
        }
        if (i == slots) break;
    }
    return best;
}

}  // namespace gapex
