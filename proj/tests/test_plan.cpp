#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapex/explore.hpp"
#include "gapex/plan.hpp"
#include "test_util.hpp"

using namespace gapex;

TEST_CASE("planning bonus sentinel and hand values") {
    VisitCounts counts = VisitCounts::zeros(2, 1);
    CHECK(planning_bonus(counts, 1.0, 2)[0] == 2.0);

    counts.n_sa[0] = 2;
    CHECK(planning_bonus(counts, 1.0, 2)[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("planning bonus sits below the pre-clip exploration root term") {
    const int H = 3, S = 4, A = 2;
    const double iota = iota_constant(H, S, A, 100, 0.1);
    for (std::int64_t n : {1, 5, 50, 5000}) {
        const double planning = std::sqrt(H * H * iota / (2.0 * n));
        const double exploration_root = std::sqrt(8.0 * H * H * iota / n);
        CHECK(planning <= exploration_root);
    }
}

TEST_CASE("planning with an empty history prefix returns the all-zeros policy") {
    Rng rng(3);
    TabularMdp mdp = testutil::random_mdp(3, 2, 3, rng);
    RewardFn reward = testutil::random_reward(3, 3, 2, rng);

    ExplorationConfig cfg;
    cfg.rho = 0.3;
    cfg.episodes = 1;
    cfg.seed = 9;
    ExploreResult run = explore(mdp, cfg);

    PlanOptions opt;
    PlanningResult result = plan(run.history, reward, opt, {1});
    REQUIRE(result.policies.size() == 1);
    for (action_t a : result.policies[0].action) CHECK(a == 0);
    for (double q : result.tables[0].q) {
        CHECK(q == doctest::Approx(3.0));  // sentinel bonus caps everything at H
    }
}

TEST_CASE("checkpoint mixture weights partition the episode range") {
    const std::vector<int> checkpoints = {1, 2, 4, 8, 16};
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        const auto weights = mixture_weights(checkpoints, j);
        std::int64_t total = 0;
        for (std::int64_t w : weights) {
            CHECK(w >= 0);
            total += w;
        }
        CHECK(total == checkpoints[j]);
    }
    // {1,2,4}: policy 1 covers episode 1, policy 2 covers 2..3, policy 4 covers 4.
    const auto weights = mixture_weights(checkpoints, 2);
    CHECK(weights[0] == 1);
    CHECK(weights[1] == 2);
    CHECK(weights[2] == 1);

    // First checkpoint past episode 1: earlier episodes fall to its policy.
    const std::vector<int> late = {4, 8};
    CHECK(mixture_weights(late, 0) == std::vector<std::int64_t>{4});
    CHECK(mixture_weights(late, 1) == std::vector<std::int64_t>{7, 1});
}

TEST_CASE("planning errors equal the expanded-mixture evaluation") {
    Rng rng(11);
    TabularMdp mdp = testutil::random_mdp(4, 3, 3, rng);
    RewardFn reward = testutil::random_reward(3, 4, 3, rng);

    ExplorationConfig cfg;
    cfg.rho = 0.3;
    cfg.episodes = 40;
    cfg.seed = 5;
    ExploreResult run = explore(mdp, cfg);

    PlanOptions opt;
    const std::vector<int> checkpoints = {1, 2, 4, 8, 16, 32, 40};
    PlanningResult result = plan(run.history, reward, opt, checkpoints);
    const std::vector<double> errors = planning_errors(result, mdp, reward);
    const double v_star = optimal_values(mdp, reward).v_at(0, mdp.initial_state);

    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        const MixturePolicy mix = mixture_at(result, j);
        CHECK(static_cast<int>(mix.components.size()) == checkpoints[j]);
        const double via_mixture = v_star - mixture_value(mdp, reward, mix);
        CHECK(std::abs(errors[j] - via_mixture) < 1e-12);
    }
}

TEST_CASE("exact per-episode planning matches the uniform mixture definition") {
    Rng rng(13);
    TabularMdp mdp = testutil::random_mdp(3, 2, 2, rng);
    RewardFn reward = testutil::random_reward(2, 3, 2, rng);

    ExplorationConfig cfg;
    cfg.rho = 0.2;
    cfg.episodes = 12;
    cfg.seed = 21;
    ExploreResult run = explore(mdp, cfg);

    std::vector<int> all(12);
    for (int k = 1; k <= 12; ++k) all[k - 1] = k;
    PlanOptions opt;
    PlanningResult result = plan(run.history, reward, opt, all);

    const std::vector<double> errors = planning_errors(result, mdp, reward);
    const double v_star = optimal_values(mdp, reward).v_at(0, mdp.initial_state);
    // Under full checkpoints the mixture at k is exactly uniform over
    // pi^1..pi^k.
    double running = 0.0;
    for (int k = 1; k <= 12; ++k) {
        running +=
            policy_value(mdp, reward, result.policies[k - 1]).v_at(0, mdp.initial_state);
        const double expect = v_star - running / k;
        CHECK(std::abs(errors[k - 1] - expect) < 1e-12);
    }
}

TEST_CASE("optimistic planning values stay in [0, H] and planning error is nonnegative") {
    Rng rng(17);
    TabularMdp mdp = testutil::random_mdp(4, 2, 4, rng);
    RewardFn reward = testutil::random_reward(4, 4, 2, rng);

    ExplorationConfig cfg;
    cfg.rho = 0.25;
    cfg.episodes = 64;
    cfg.seed = 3;
    ExploreResult run = explore(mdp, cfg);
    PlanningResult result =
        plan(run.history, reward, PlanOptions{}, geometric_checkpoints(64));
    for (const ValueTables& tables : result.tables) {
        for (double q : tables.q) {
            CHECK(q >= 0.0);
            CHECK(q <= 4.0);
        }
    }
    for (double err : planning_errors(result, mdp, reward)) {
        CHECK(err >= -1e-9);
    }
}

TEST_CASE("snapshot-driven planning equals history replay") {
    Rng rng(19);
    TabularMdp mdp = testutil::random_mdp(4, 3, 3, rng);
    RewardFn reward = testutil::random_reward(3, 4, 3, rng);

    const std::vector<int> checkpoints = {1, 4, 16, 50};
    ExplorationConfig cfg;
    cfg.rho = 0.3;
    cfg.episodes = 50;
    cfg.seed = 77;
    ExploreResult run = explore(mdp, cfg, checkpoints);

    PlanOptions opt;
    PlanningResult from_history = plan(run.history, reward, opt, checkpoints);
    PlanningResult from_snapshots =
        plan_from_snapshots(run.log.snapshots, 50, reward, opt);
    REQUIRE(from_history.policies.size() == from_snapshots.policies.size());
    for (std::size_t j = 0; j < from_history.policies.size(); ++j) {
        CHECK(from_history.policies[j].action == from_snapshots.policies[j].action);
        CHECK(from_history.tables[j].q == from_snapshots.tables[j].q);
    }
}

TEST_CASE("optimism holds in most seeded runs") {
    Rng rng(23);
    TabularMdp mdp = testutil::random_mdp(3, 2, 3, rng);
    RewardFn reward = testutil::random_reward(3, 3, 2, rng);
    const ValueTables star = optimal_values(mdp, reward);

    const int runs = 60, K = 200;
    int violations = 0;
    for (int run_id = 0; run_id < runs; ++run_id) {
        ExplorationConfig cfg;
        cfg.rho = 0.2;
        cfg.episodes = K;
        cfg.delta = 0.1;
        cfg.seed = 1000 + run_id;
        ExploreResult run = explore(mdp, cfg, {K});
        PlanOptions opt;
        PlanningResult result = plan_from_snapshots(run.log.snapshots, K, reward, opt);
        bool violated = false;
        for (int h = 0; h < 3 && !violated; ++h) {
            for (state_t x = 0; x < 3 && !violated; ++x) {
                for (action_t a = 0; a < 2; ++a) {
                    if (result.tables[0].q_at(h, x, a) < star.q_at(h, x, a) - 1e-9) {
                        violated = true;
                        break;
                    }
                }
            }
        }
        if (violated) ++violations;
    }
    // delta = 0.1 plus generous sampling slack for 60 runs.
    CHECK(static_cast<double>(violations) / runs <= 0.2);
}

TEST_CASE("checkpoints outside the history are rejected") {
    Rng rng(29);
    TabularMdp mdp = testutil::random_mdp(3, 2, 2, rng);
    RewardFn reward = testutil::random_reward(2, 3, 2, rng);
    ExplorationConfig cfg;
    cfg.rho = 0.2;
    cfg.episodes = 5;
    ExploreResult run = explore(mdp, cfg);
    CHECK_THROWS_AS(plan(run.history, reward, PlanOptions{}, {0}), MdpError);
    CHECK_THROWS_AS(plan(run.history, reward, PlanOptions{}, {6}), MdpError);
    CHECK_THROWS_AS(plan(History{}, reward, PlanOptions{}, {1}), MdpError);
}
