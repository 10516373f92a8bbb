#include "gapex/counts.hpp"

namespace gapex {

VisitCounts VisitCounts::zeros(int S, int A) {
    VisitCounts out;
    out.num_states = S;
    out.num_actions = A;
    out.n_sa.assign(static_cast<std::size_t>(S) * A, 0);
    out.n_say.assign(static_cast<std::size_t>(S) * A * S, 0);
    return out;
}

void absorb_trajectory(VisitCounts& counts, const Trajectory& traj) {
    if (traj.steps.size() != traj.next_states.size() || traj.steps.empty()) {
        throw ShapeMismatch("trajectory steps and next states disagree");
    }
    const int S = counts.num_states;
    const int A = counts.num_actions;
    for (std::size_t h = 0; h < traj.steps.size(); ++h) {
        const state_t x = traj.steps[h].state;
        const action_t a = traj.steps[h].action;
        const state_t y = traj.next_states[h];
        if (x < 0 || x >= S || y < 0 || y >= S || a < 0 || a >= A) {
            throw ShapeMismatch("trajectory index out of range");
        }
        counts.n_sa[static_cast<std::size_t>(x) * A + a] += 1;
        counts.n_say[(static_cast<std::size_t>(x) * A + a) * S + y] += 1;
    }
    counts.episodes_absorbed += 1;
}

EmpiricalTransition empirical_transition(const VisitCounts& counts) {
    const int S = counts.num_states;
    const int A = counts.num_actions;
    EmpiricalTransition out;
    out.num_states = S;
    out.num_actions = A;
    out.p_hat.assign(static_cast<std::size_t>(S) * A * S, 0.0);
    const double uniform = 1.0 / static_cast<double>(S);
    for (state_t x = 0; x < S; ++x) {
        for (action_t a = 0; a < A; ++a) {
            const std::size_t base = (static_cast<std::size_t>(x) * A + a) * S;
            const std::int64_t n = counts.at(x, a);
            if (n > 0) {
                const double inv = 1.0 / static_cast<double>(n);
                for (state_t y = 0; y < S; ++y) {
                    out.p_hat[base + y] =
                        static_cast<double>(counts.n_say[base + y]) * inv;
                }
            } else {
                for (state_t y = 0; y < S; ++y) out.p_hat[base + y] = uniform;
            }
        }
    }
    return out;
}

}  // namespace gapex
