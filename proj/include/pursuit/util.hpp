#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pursuit {

/// Raised when an operation would exceed an explicit size/time budget
/// (infinite-graph enumeration, state-space caps, search budgets).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Deterministic 64-bit generator (SplitMix64). Strategy simulations must
/// replay bit-exactly from a transcript header across platforms, so we do
/// not use <random> distributions (their outputs are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n). n must be positive.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::bounded: n == 0");
        // Rejection sampling on the top bits; unbiased and portable.
        std::uint64_t threshold = (~n + 1) % n;  // (2^64 - n) mod n
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int boundedInt(int n) { return static_cast<int>(bounded(static_cast<std::uint64_t>(n))); }

    bool chance(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

    /// Independent child stream; used to give cop and robber separate
    /// streams derived from the single transcript seed.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace pursuit
