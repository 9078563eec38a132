#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <cfm/linear_repr.hpp>
#include <cfm/matcher.hpp>
#include <cfm/sequence.hpp>

namespace cfm {

// ---------------------------------------------------------------------------
// Forest signature: prefix-free bit encoding of the skipped numbers
// ---------------------------------------------------------------------------

/// Bit string identifying a forest. Per entry: 0 when the skipped number is
/// zero, otherwise a sign pair (10 negative, 11 positive) followed by the
/// magnitude in unary (|v|-1 one bits, then a zero bit). First emitted bit is
/// the most significant bit of byte 0; the last byte is zero-padded.
struct Signature {
    std::vector<std::uint8_t> bytes;
    std::size_t bit_length = 0;

    bool operator==(const Signature&) const = default;

    void push_bit(bool b) {
        if (bit_length % 8 == 0) bytes.push_back(0);
        if (b) bytes.back() |= static_cast<std::uint8_t>(0x80u >> (bit_length % 8));
        ++bit_length;
    }

    bool bit(std::size_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1u; }

    std::string to_bit_string() const {
        std::string s;
        s.reserve(bit_length);
        for (std::size_t i = 0; i < bit_length; ++i) s.push_back(bit(i) ? '1' : '0');
        return s;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        s.reserve(2 * bytes.size());
        for (std::uint8_t b : bytes) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xf]);
        }
        return s;
    }
};

inline Signature signature_from_sn(const SkippedNumber& sn) {
    Signature sig;
    for (std::int32_t v : sn) {
        if (v == 0) {
            sig.push_bit(false);
            continue;
        }
        sig.push_bit(true);
        sig.push_bit(v > 0);
        for (std::int32_t i = 0; i + 1 < (v < 0 ? -v : v); ++i) sig.push_bit(true);
        sig.push_bit(false);
    }
    return sig;
}

inline Signature signature(const Sequence& x) { return signature_from_sn(skipped_number(x)); }

// ---------------------------------------------------------------------------
// tau-filter: zero/nonzero mask of the trailing representation entries
// ---------------------------------------------------------------------------

/// Up to 128 mask bits in two machine words. Bit 0 (least significant of lo)
/// mirrors the newest window entry, so a slide is shift-left-and-insert.
struct Filter {
    std::uint64_t hi = 0, lo = 0;
    unsigned width = 0; // declared tau; surplus bits above min(tau, m) stay 0

    bool operator==(const Filter&) const = default;

    void shift_in(bool b, unsigned effective) {
        hi = (hi << 1) | (lo >> 63);
        lo = (lo << 1) | (b ? 1u : 0u);
        mask(effective);
    }

    void set_bit(unsigned i, bool b) {
        if (i < 64) {
            lo = b ? (lo | (std::uint64_t{1} << i)) : (lo & ~(std::uint64_t{1} << i));
        } else {
            hi = b ? (hi | (std::uint64_t{1} << (i - 64))) : (hi & ~(std::uint64_t{1} << (i - 64)));
        }
    }

    bool bit(unsigned i) const {
        return ((i < 64 ? lo >> i : hi >> (i - 64)) & 1u) != 0;
    }

    void mask(unsigned effective) {
        if (effective < 64) {
            lo &= (std::uint64_t{1} << effective) - 1;
            hi = 0;
        } else if (effective < 128) {
            hi &= (std::uint64_t{1} << (effective - 64)) - 1;
        }
    }

    std::string to_bit_string() const {
        std::string s;
        s.reserve(width);
        for (unsigned i = width; i-- > 0;) s.push_back(bit(i) ? '1' : '0');
        return s;
    }
};

inline constexpr unsigned kMaxTau = 128;

/// Mask over the last min(tau, m) entries of a linear representation:
/// bit = 0 iff the entry is 0. Higher bits stay clear when tau exceeds m.
inline Filter tau_filter(const std::vector<std::int32_t>& repr, unsigned tau) {
    if (tau == 0 || tau > kMaxTau) throw std::invalid_argument("tau must be in 1..128");
    const std::size_t m = repr.size();
    const unsigned eff = static_cast<unsigned>(std::min<std::size_t>(tau, m));
    Filter f;
    f.width = tau;
    for (unsigned i = 0; i < eff; ++i)
        f.set_bit(i, repr[m - 1 - i] != 0);
    return f;
}

// ---------------------------------------------------------------------------
// Filter-accelerated exact matching
// ---------------------------------------------------------------------------

/// Same positions as exact_match; the entry-by-entry window comparison runs
/// only when the window filter equals the pattern filter. The filter follows
/// each slide in constant time from the window's changed-position set.
inline MatchResult filtered_match(const Sequence& p, const Sequence& t, unsigned tau,
                                  ReprKind kind = ReprKind::SkippedNumber) {
    if (p.empty()) throw std::invalid_argument("filtered_match: empty pattern");
    if (tau == 0 || tau > kMaxTau) throw std::invalid_argument("tau must be in 1..128");
    MatchResult res;
    const std::size_t m = p.size(), n = t.size();
    if (m > n) return res;
    const unsigned eff = static_cast<unsigned>(std::min<std::size_t>(tau, m));

    WindowState pw(p, m, kind);
    const std::vector<std::int32_t> pr = pw.repr();
    const Filter pf = tau_filter(pr, tau);

    WindowState w(t, m, kind);
    Filter wf = tau_filter(w.repr(), tau);

    const std::size_t last = n - m;
    for (std::size_t j = 0;; ++j) {
        ++res.counters.windows_examined;
        ++res.counters.repr_comparisons; // one filter-word comparison
        if (wf == pf) {
            ++res.counters.windows_full_checked;
            bool match = true;
            for (std::size_t i = 0; i < m; ++i) {
                ++res.counters.repr_comparisons;
                if (pr[i] != w.repr_at(i)) {
                    match = false;
                    break;
                }
            }
            if (match) res.positions.push_back(j + 1);
        }
        if (j == last) break;
        w.slide();
        wf.shift_in(w.repr_at(m - 1) != 0, eff);
        for (std::size_t rel : w.changed()) {
            if (rel + 1 == m) continue; // tail bit came in with the shift
            if (rel + eff >= m)
                wf.set_bit(static_cast<unsigned>(m - 1 - rel), w.repr_at(rel) != 0);
        }
    }
    res.counters.element_comparisons = pw.element_comparisons() + w.element_comparisons();
    return res;
}

} // namespace cfm
