#include "gapex/envgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapex/dp.hpp"
#include "gapex/rng.hpp"

namespace gapex {

namespace {

int tree_depth_for(int S, int A) {
    int d = 0;
    long reach = 1;
    while (reach < S) {
        reach *= A;
        ++d;
    }
    return d;
}

}  // namespace

HardInstance hard_instance(int S, int A, int H, double rho, double epsilon,
                           int type1_leaf, int type2_leaf) {
    if (S < 5) throw InfeasibleParams("need at least 5 models");
    if (A < 2) throw InfeasibleParams("need at least 2 actions");
    if (H < 2) throw InfeasibleParams("payout horizon must be >= 2");
    if (!(rho > 0.0 && rho < 1.0)) throw InfeasibleParams("rho must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon < rho)) {
        throw InfeasibleParams("epsilon must lie in (0, rho)");
    }
    if (type1_leaf == type2_leaf || type1_leaf < 0 || type2_leaf < 0 ||
        type1_leaf >= S || type2_leaf >= S) {
        throw InfeasibleParams("special leaves must be two distinct models");
    }

    HardInstanceLayout layout;
    layout.tree_depth = tree_depth_for(S, A);
    const int d = layout.tree_depth;

    // Truncated A-ary tree: level i holds just enough nodes to cover the S
    // leaves below it.
    long span = 1;  // A^(d-i) at level i, walked from the leaves upward
    std::vector<int> sizes(d);
    for (int i = d - 1; i >= 0; --i) {
        span *= A;
        sizes[i] = static_cast<int>((S + span - 1) / span);
    }
    int total_tree = 0;
    layout.level_sizes = sizes;
    layout.level_offsets.resize(d);
    for (int i = 0; i < d; ++i) {
        layout.level_offsets[i] = total_tree;
        total_tree += sizes[i];
    }

    const int S_total = total_tree + 2 * S + 3;
    layout.num_states = S_total;
    layout.green.resize(S);
    layout.left_orange.resize(S);
    for (int g = 0; g < S; ++g) {
        layout.green[g] = total_tree + g;
        layout.left_orange[g] = total_tree + S + g;
    }
    layout.left_blue = total_tree + 2 * S;
    layout.right_blue = total_tree + 2 * S + 1;
    layout.right_orange = total_tree + 2 * S + 2;
    layout.type1_leaf = type1_leaf;
    layout.type2_leaf = type2_leaf;
    layout.orange_step = d + 1;

    const int H_total = d + 2 + H;

    HardInstance out;
    out.layout = layout;
    out.mdp.num_states = S_total;
    out.mdp.num_actions = A;
    out.mdp.horizon = H_total;
    out.mdp.initial_state = d > 0 ? 0 : layout.green[0];
    out.mdp.transition.assign(
        static_cast<std::size_t>(S_total) * A * S_total, 0.0);

    auto set_p = [&](state_t x, action_t a, state_t y, double p) {
        out.mdp.p(x, a, y) = p;
    };

    // Routing tree: action a at node n of level i goes to child n*A + a of
    // the next level, clamped to that level's node count.
    for (int i = 0; i < d; ++i) {
        const int next_size = (i + 1 < d) ? sizes[i + 1] : S;
        for (int n = 0; n < sizes[i]; ++n) {
            const state_t node = layout.level_offsets[i] + n;
            for (action_t a = 0; a < A; ++a) {
                const long child =
                    std::min<long>(static_cast<long>(n) * A + a, next_size - 1);
                const state_t target = (i + 1 < d)
                                           ? layout.level_offsets[i + 1] +
                                                 static_cast<state_t>(child)
                                           : layout.green[child];
                set_p(node, a, target, 1.0);
            }
        }
    }

    const double reach = epsilon / rho;
    for (int g = 0; g < S; ++g) {
        for (action_t a = 0; a < A; ++a) {
            set_p(layout.green[g], a, layout.left_orange[g], reach);
            set_p(layout.green[g], a, layout.right_orange, 1.0 - reach);
        }
    }

    for (int g = 0; g < S; ++g) {
        const state_t lo = layout.left_orange[g];
        for (action_t a = 0; a < A; ++a) {
            double p_left = 0.5;
            if (a == 0 && g == type1_leaf) p_left = 0.5 + rho / (2.0 * H);
            if (a == 0 && g == type2_leaf) p_left = 0.5 + rho / H;
            set_p(lo, a, layout.left_blue, p_left);
            set_p(lo, a, layout.right_blue, 1.0 - p_left);
        }
    }

    for (action_t a = 0; a < A; ++a) {
        set_p(layout.left_blue, a, layout.left_blue, 1.0);
        set_p(layout.right_blue, a, layout.right_blue, 1.0);
        set_p(layout.right_orange, a, layout.right_orange, 1.0);
    }

    out.reward = RewardFn::zeros(H_total, S_total, A);
    for (int h = 0; h < H_total; ++h) {
        for (action_t a = 0; a < A; ++a) out.reward.at(h, layout.left_blue, a) = 1.0;
    }

    // Equalizing rewards. The routing tree branches deterministically toward
    // models of different value, and after its natural step the left-orange
    // edge keeps paying into a shrinking remainder of the horizon; both would
    // leave stray positive gaps unrelated to the rho/2 structure. A small
    // action-dependent reward lifts every such action to the value of the
    // best one, leaving the gap table nonzero exactly at the left-orange
    // decision step.
    {
        std::vector<double> v_next(S_total, 0.0);
        std::vector<double> v_here(S_total, 0.0);
        std::vector<double> q_row(A, 0.0);
        std::vector<char> is_tree_node(S_total, 0);
        for (int i = 0; i < total_tree; ++i) is_tree_node[i] = 1;
        for (int h = H_total - 1; h >= 0; --h) {
            for (state_t x = 0; x < S_total; ++x) {
                double best = 0.0;
                for (action_t a = 0; a < A; ++a) {
                    double q = out.reward.at(h, x, a);
                    const double* row = out.mdp.row(x, a);
                    for (state_t y = 0; y < S_total; ++y) q += row[y] * v_next[y];
                    q_row[a] = q;
                    if (a == 0 || q > best) best = q;
                }
                const bool is_special_orange =
                    (x == layout.left_orange[type1_leaf] ||
                     x == layout.left_orange[type2_leaf]) &&
                    h > layout.orange_step;
                if (is_tree_node[x] || is_special_orange) {
                    for (action_t a = 0; a < A; ++a) {
                        out.reward.at(h, x, a) += best - q_row[a];
                    }
                }
                v_here[x] = best;
            }
            std::swap(v_here, v_next);
        }
    }

    validate_mdp(out.mdp);
    return out;
}

Gridworld random_gridworld(int H, int S, int A, double rho, std::uint64_t seed) {
    if (S < 3) {
        // With fewer than three states the no-revisit and gated-reward
        // constraints leave some transition rows without support.
        throw InfeasibleParams("gridworld generator needs S >= 3");
    }
    if (A < 1 || H < 1) throw InfeasibleParams("need A >= 1 and H >= 1");
    if (!(rho > 0.0 && rho < 1.0)) throw InfeasibleParams("rho must lie in (0,1)");

    const Rng root(seed);
    constexpr int kMaxTries = 100;
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
        Rng rng = root.split(static_cast<std::uint64_t>(attempt));

        Gridworld gw;
        gw.rejections = attempt;
        gw.x_star = 1 + rng.next_below(S - 1);
        gw.a_star = rng.next_below(A);

        TabularMdp& mdp = gw.mdp;
        mdp.num_states = S;
        mdp.num_actions = A;
        mdp.horizon = H;
        mdp.initial_state = 0;
        mdp.transition.assign(static_cast<std::size_t>(S) * A * S, 0.0);

        const state_t x0 = 0;
        const state_t xs = gw.x_star;
        for (state_t x = 0; x < S; ++x) {
            for (action_t a = 0; a < A; ++a) {
                if (x == xs && a == gw.a_star) {
                    mdp.p(x, a, xs) = 1.0;
                    continue;
                }
                // Remaining mass goes to random junk states; the initial
                // state is never a target, and x* only through its gates.
                const bool gate = (x == x0 && a == gw.a_star);
                double mass = 1.0;
                if (gate) {
                    mdp.p(x, a, xs) = rho;
                    mass -= rho;
                }
                double total = 0.0;
                std::vector<double> weights(S, 0.0);
                for (state_t y = 0; y < S; ++y) {
                    if (y == x0 || y == xs) continue;
                    weights[y] = rng.next_double();
                    total += weights[y];
                }
                if (total == 0.0) {
                    // Degenerate draw; spread the mass evenly instead.
                    for (state_t y = 0; y < S; ++y) {
                        if (y != x0 && y != xs) weights[y] = 1.0, total += 1.0;
                    }
                }
                for (state_t y = 0; y < S; ++y) {
                    if (weights[y] > 0.0) mdp.p(x, a, y) = mass * weights[y] / total;
                }
            }
        }

        gw.reward = RewardFn::zeros(H, S, A);
        for (int h = 0; h < H; ++h) {
            for (action_t a = 0; a < A; ++a) gw.reward.at(h, xs, a) = 1.0;
        }

        validate_mdp(mdp);
        const GapReport report = gaps(mdp, gw.reward);
        if (report.gap_min >= rho - 1e-9) return gw;
    }
    throw InfeasibleParams("no gridworld with the requested gap after " +
                           std::to_string(kMaxTries) + " attempts");
}

BanditEnv bandit_as_mdp(const std::vector<double>& means) {
    if (means.empty()) throw InfeasibleParams("bandit needs at least one arm");
    for (double m : means) {
        if (m < 0.0 || m > 1.0) throw InfeasibleParams("arm means must lie in [0,1]");
    }
    const int A = static_cast<int>(means.size());
    BanditEnv out;
    out.mdp.num_states = 1;
    out.mdp.num_actions = A;
    out.mdp.horizon = 1;
    out.mdp.initial_state = 0;
    out.mdp.transition.assign(static_cast<std::size_t>(A), 1.0);
    out.reward = RewardFn::zeros(1, 1, A);
    for (action_t a = 0; a < A; ++a) out.reward.at(0, 0, a) = means[a];
    return out;
}

}  // namespace gapex
