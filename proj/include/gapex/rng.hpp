#pragma once

#include <cstdint>

namespace gapex {

/// Small counter-based generator (splitmix64 steps). Deterministic for a
/// given seed and cheap to fork into independent child streams, one per
/// (run, episode) or per trial.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    int next_below(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Independent child stream identified by `stream`; forking does not
    /// advance this generator.
    Rng split(std::uint64_t stream) const {
        std::uint64_t z = state_ ^ (0x632BE59BD9B4E019ULL * (stream + 1));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return Rng(z ^ (z >> 31));
    }

  private:
    std::uint64_t state_;
};

}  // namespace gapex
