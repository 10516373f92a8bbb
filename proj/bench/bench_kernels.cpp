// Timing comparison of the OpenMP backward-induction kernels against their
// serial reference on synthetic instances of growing size.

#include <chrono>
#include <cstdio>
#include <vector>

#include "gapex/dp.hpp"
#include "gapex/kernels.hpp"
#include "gapex/rng.hpp"

using namespace gapex;
using clock_type = std::chrono::steady_clock;

namespace {

std::vector<double> random_transition(int S, int A, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(S) * A * S);
    for (int x = 0; x < S; ++x) {
        for (int a = 0; a < A; ++a) {
            double total = 0.0;
            const std::size_t base = (static_cast<std::size_t>(x) * A + a) * S;
            for (int y = 0; y < S; ++y) {
                p[base + y] = rng.next_double() + 1e-9;
                total += p[base + y];
            }
            for (int y = 0; y < S; ++y) p[base + y] /= total;
        }
    }
    return p;
}

double time_ms(const auto& fn, int reps) {
    fn();  // warm-up
    const auto start = clock_type::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main() {
    Rng rng(42);
    std::printf("%-26s %12s %12s %9s\n", "instance", "serial (ms)", "openmp (ms)",
                "speedup");

    struct Case {
        int S, A, H, reps;
    };
    const Case cases[] = {{20, 5, 10, 200}, {80, 10, 15, 50}, {200, 20, 20, 10},
                          {400, 20, 20, 4}};

    for (const Case& c : cases) {
        const std::vector<double> p = random_transition(c.S, c.A, rng);
        RewardFn reward = RewardFn::zeros(c.H, c.S, c.A);
        for (double& r : reward.r) r = rng.next_double();

        InductionOptions opt;
        opt.reward = &reward;

        const double t_serial = time_ms(
            [&] { backward_induction_serial(c.S, c.A, c.H, p.data(), opt); }, c.reps);
        const double t_omp = time_ms(
            [&] { backward_induction(c.S, c.A, c.H, p.data(), opt); }, c.reps);

        // The parallel path must agree bit for bit with the reference.
        const ValueTables a = backward_induction_serial(c.S, c.A, c.H, p.data(), opt);
        const ValueTables b = backward_induction(c.S, c.A, c.H, p.data(), opt);
        const bool same = a.q == b.q && a.v == b.v;

        char label[64];
        std::snprintf(label, sizeof(label), "S=%d A=%d H=%d%s", c.S, c.A, c.H,
                      same ? "" : "  [MISMATCH]");
        std::printf("%-26s %12.3f %12.3f %8.2fx\n", label, t_serial, t_omp,
                    t_serial / t_omp);
    }
    return 0;
}
