#pragma once

#include <cstdint>

namespace dg {

/// Deterministic 64-bit generator (splitmix64).
///
/// All randomized machinery in the library goes through this generator so
/// that a (seed, purpose) pair reproduces bit-identical streams on every
/// platform: only integer arithmetic plus a fixed uint64 -> double mapping
/// is used, never std::uniform_*_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_in(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Uniform integer in [lo, hi] (inclusive). Modulo bias is negligible
    /// for the range sizes used here and keeps the mapping platform-stable.
    long next_int(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<long>(next_u64() % span);
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    /// Stateless mix of two words; used to derive independent substreams
    /// (e.g. per-field seeds from a corpus seed, per-block coefficients).
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1u);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

} // namespace dg
