#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include <cfm/sequence.hpp>

namespace cfm {

/// Fixed 64-bit mixing generator (the splitmix64 recurrence), spelled out so
/// outputs are reproducible from the description alone:
///   state += 0x9e3779b97f4a7c15
///   z = state; z = (z ^ z>>30) * 0xbf58476d1ce4e5b9
///   z = (z ^ z>>27) * 0x94d049bb133111eb;  output z ^ z>>31
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from {0, ..., bound-1} by the high bits of a 64x64
    /// product (fixed-point multiply; bias below 2^-57 for small bounds).
    std::uint64_t next_below(std::uint64_t bound) { return mul_high(next(), bound); }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static std::uint64_t mul_high(std::uint64_t a, std::uint64_t b) {
        const std::uint64_t a_lo = a & 0xffffffffull, a_hi = a >> 32;
        const std::uint64_t b_lo = b & 0xffffffffull, b_hi = b >> 32;
        const std::uint64_t mid = a_hi * b_lo + ((a_lo * b_lo) >> 32);
        const std::uint64_t mid2 = a_lo * b_hi + (mid & 0xffffffffull);
        return a_hi * b_hi + (mid >> 32) + (mid2 >> 32);
    }

private:
    std::uint64_t state_;
};

struct GenSpec {
    std::size_t n = 0;
    std::uint64_t k = 1;              // alphabet {1..k}
    std::uint64_t seed = 0;
    std::optional<double> h2;         // target collision entropy, bits
};

/// i.i.d. uniform over {1..k}, fully determined by (n, k, seed).
inline Sequence uniform_sequence(const GenSpec& spec) {
    if (spec.k == 0) throw std::invalid_argument("uniform_sequence: alphabet size must be positive");
    if (spec.h2) throw std::invalid_argument("uniform_sequence: h2 must be unset");
    SplitMix64 rng(spec.seed);
    Sequence out(spec.n);
    for (auto& v : out) v = static_cast<Value>(rng.next_below(spec.k)) + 1;
    return out;
}

namespace detail {

/// First-symbol probability of the (a, b, ..., b) distribution whose
/// collision probability is 2^(-h2): the a >= 1/k root of
/// k a^2 - 2a + 1 - c(k-1) = 0 with c = 2^(-h2).
inline double entropy_head_probability(double h2, std::uint64_t k) {
    const double c = std::exp2(-h2);
    const double kk = static_cast<double>(k);
    const double eps = 1e-12;
    if (!(h2 >= 0.0) || c > 1.0 + eps || c < 1.0 / kk - eps)
        throw std::invalid_argument("entropy_sequence: h2 outside [0, log2 k]");
    const double disc = (kk - 1.0) * (std::max(0.0, c * kk - 1.0));
    return std::min(1.0, (1.0 + std::sqrt(disc)) / kk);
}

} // namespace detail

/// i.i.d. draws from (a, b, ..., b) over {1..k} with a + (k-1)b = 1 and
/// a^2 + (k-1)b^2 = 2^(-h2), taking the a >= 1/k root. Symbol 1 is drawn
/// when the first 64-bit value falls below floor(a * 2^64); otherwise a
/// second draw picks uniformly among {2..k}.
inline Sequence entropy_sequence(const GenSpec& spec) {
    if (spec.k == 0) throw std::invalid_argument("entropy_sequence: alphabet size must be positive");
    if (!spec.h2) throw std::invalid_argument("entropy_sequence: h2 must be set");
    const double a = detail::entropy_head_probability(*spec.h2, spec.k);

    SplitMix64 rng(spec.seed);
    Sequence out(spec.n);
    if (spec.k == 1 || a >= 1.0) {
        for (auto& v : out) v = 1;
        return out;
    }
    const auto threshold = static_cast<std::uint64_t>(std::ldexp(a, 64) < 0x1.0p64
                                                          ? std::ldexp(a, 64)
                                                          : 0x1.fffffffffffffp63);
    for (auto& v : out) {
        if (rng.next() < threshold)
            v = 1;
        else
            v = static_cast<Value>(rng.next_below(spec.k - 1)) + 2;
    }
    return out;
}

} // namespace cfm
