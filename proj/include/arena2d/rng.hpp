#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace arena2d {

/// Deterministic random stream. All randomness in the simulator flows through
/// this wrapper so that runs are reproducible bit-for-bit from a single seed:
/// the distributions are implemented here instead of relying on the
/// implementation-defined std:: distributions.
class RngStream {
public:
    RngStream() : engine_(0) {}
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    int uniform_int(int n) {
        return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
    }

    /// Zero-mean Gaussian via Box-Muller (one value per call, no cached spare).
    double normal(double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        // keep log argument away from zero
        u1 = (u1 > 0.0) ? u1 : 0x1.0p-53;
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Derive an independent child stream (used to give each subsystem its
    /// own sequence while keeping everything a function of the master seed).
    RngStream fork() { return RngStream(engine_() ^ 0x9e3779b97f4a7c15ull); }

    bool operator==(const RngStream& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace arena2d
