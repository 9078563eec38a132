#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <cfm/forest.hpp>
#include <cfm/linear_repr.hpp>
#include <cfm/sequence.hpp>

namespace cfm {

enum class MatchKind { Exact, Swap, Mismatch, Insertion, Deletion };

struct MatchCounters {
    std::uint64_t element_comparisons = 0; // value-vs-value during scans
    std::uint64_t repr_comparisons = 0;    // representation entries (and filter words)
    std::uint64_t windows_examined = 0;
    std::uint64_t windows_full_checked = 0;

    std::uint64_t comparisons() const { return element_comparisons + repr_comparisons; }
};

struct MatchResult {
    std::vector<std::size_t> positions; // 1-based window starts, increasing
    MatchCounters counters;
};

/// Window length for a given kind relative to pattern length m.
inline std::size_t window_length(MatchKind kind, std::size_t m) {
    switch (kind) {
        case MatchKind::Insertion: return m + 1;
        case MatchKind::Deletion: return m - 1;
        default: return m;
    }
}

// ---------------------------------------------------------------------------
// Exact matching: slide one representation and compare per window
// ---------------------------------------------------------------------------

inline MatchResult exact_match(const Sequence& p, const Sequence& t, ReprKind kind) {
    if (p.empty()) throw std::invalid_argument("exact_match: empty pattern");
    MatchResult res;
    const std::size_t m = p.size(), n = t.size();
    if (m > n) return res;

    WindowState pw(p, m, kind);
    const std::vector<std::int32_t> pr = pw.repr();
    WindowState w(t, m, kind);

    const std::size_t last = n - m;
    for (std::size_t j = 0;; ++j) {
        ++res.counters.windows_examined;
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
        if (j == last) break;
        w.slide();
    }
    res.counters.element_comparisons = pw.element_comparisons() + w.element_comparisons();
    return res;
}

// ---------------------------------------------------------------------------
// Per-window oracle (brute force over forests; normative semantics)
// ---------------------------------------------------------------------------

namespace detail {

/// Replacement values covering every order-distinct choice relative to the
/// window with position i removed: each present value, a value strictly
/// between each adjacent pair (when an integer exists), one below the
/// minimum and one above the maximum.
inline std::vector<Value> replacement_candidates(const Sequence& w, std::size_t i) {
    std::vector<Value> others;
    others.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        if (j != i) others.push_back(w[j]);
    if (others.empty()) return {0};

    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());

    std::vector<Value> cand;
    cand.reserve(2 * others.size() + 2);
    if (others.front() > std::numeric_limits<Value>::min())
        cand.push_back(others.front() - 1);
    for (std::size_t j = 0; j < others.size(); ++j) {
        cand.push_back(others[j]);
        if (j + 1 < others.size() && others[j + 1] - others[j] >= 2)
            cand.push_back(others[j] + (others[j + 1] - others[j]) / 2);
    }
    if (others.back() < std::numeric_limits<Value>::max())
        cand.push_back(others.back() + 1);
    return cand;
}

inline Sequence erase_at(const Sequence& s, std::size_t i) {
    Sequence out;
    out.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) out.push_back(s[j]);
    return out;
}

} // namespace detail

/// Decides whether one window matches the pattern under the given kind, by
/// direct forest construction and comparison. Swap and mismatch admit the
/// exact occurrence (at most one difference).
inline bool oracle_window_match(const Sequence& p, const Sequence& w, MatchKind kind) {
    const std::size_t m = p.size();
    if (w.size() != window_length(kind, m))
        throw std::invalid_argument("oracle_window_match: window length inconsistent with kind");

    const std::string pk = forest_key(build_forest_naive(p));
    auto matches = [&](const Sequence& s) { return forest_key(build_forest_naive(s)) == pk; };

    switch (kind) {
        case MatchKind::Exact:
            return matches(w);
        case MatchKind::Swap: {
            if (matches(w)) return true;
            Sequence s = w;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                std::swap(s[i], s[i + 1]);
                if (matches(s)) return true;
                std::swap(s[i], s[i + 1]);
            }
            return false;
        }
        case MatchKind::Mismatch: {
            if (matches(w)) return true;
            Sequence s = w;
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (Value v : detail::replacement_candidates(w, i)) {
                    s[i] = v;
                    if (matches(s)) return true;
                }
                s[i] = w[i];
            }
            return false;
        }
        case MatchKind::Insertion: {
            for (std::size_t i = 0; i < w.size(); ++i)
                if (matches(detail::erase_at(w, i))) return true;
            return false;
        }
        case MatchKind::Deletion: {
            const std::string wk = forest_key(build_forest_naive(w));
            for (std::size_t i = 0; i < p.size(); ++i)
                if (forest_key(build_forest_naive(detail::erase_at(p, i))) == wk) return true;
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Approximate matching with at most one difference
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t common_prefix(const std::vector<std::int32_t>& a,
                                 const std::vector<std::int32_t>& b,
                                 std::uint64_t* comps) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n) {
        if (comps) ++*comps;
        if (a[i] != b[i]) break;
        ++i;
    }
    return i;
}

inline std::size_t common_suffix(const std::vector<std::int32_t>& a,
                                 const std::vector<std::int32_t>& b,
                                 std::uint64_t* comps) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n) {
        if (comps) ++*comps;
        if (a[a.size() - 1 - i] != b[b.size() - 1 - i]) break;
        ++i;
    }
    return i;
}

inline std::size_t abs_mismatches(const std::vector<std::int32_t>& a,
                                  const std::vector<std::int32_t>& b,
                                  std::uint64_t* comps) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (comps) ++*comps;
        if (std::abs(a[i]) != std::abs(b[i])) ++d;
    }
    return d;
}

} // namespace detail

/// Reports every window within one difference of the pattern. Candidate
/// positions are narrowed with the prefix of the skipped-number table and
/// the suffix of the right-to-left parent distances (both are prefix- resp.
/// suffix-local in the window), then verified outright, so the result is
/// exactly the per-window oracle's.
inline MatchResult approx_match(const Sequence& p, const Sequence& t, MatchKind kind) {
    if (p.empty()) throw std::invalid_argument("approx_match: empty pattern");
    if (kind == MatchKind::Exact)
        throw std::invalid_argument("approx_match: kind must name a difference");
    if (kind == MatchKind::Deletion && p.size() < 2)
        throw std::invalid_argument("approx_match: deletion needs pattern length >= 2");

    MatchResult res;
    const std::size_t m = p.size();
    const std::size_t L = window_length(kind, m);
    if (L > t.size() || L == 0) return res;

    std::uint64_t* ec = &res.counters.element_comparisons;
    std::uint64_t* rc = &res.counters.repr_comparisons;

    SkippedNumber sn_p;
    detail::scan_linear(p, nullptr, &sn_p, nullptr, ec);
    const ParentDistance rtl_p = [&] {
        Sequence r(p.rbegin(), p.rend());
        ParentDistance pd;
        detail::scan_linear(r, &pd, nullptr, nullptr, ec);
        std::reverse(pd.begin(), pd.end());
        return pd;
    }();

    // deletion probes pattern-side variants; precompute their tables
    std::vector<SkippedNumber> sn_p_del;
    if (kind == MatchKind::Deletion) {
        sn_p_del.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            detail::scan_linear(detail::erase_at(p, i), nullptr, &sn_p_del[i], nullptr, ec);
    }

    Sequence w(L), wrev(L), scratch;
    SkippedNumber sn_w, sn_v;
    ParentDistance rtl_w;

    const std::size_t last = t.size() - L;
    for (std::size_t j = 0; j <= last; ++j) {
        ++res.counters.windows_examined;
        std::copy(t.begin() + j, t.begin() + j + L, w.begin());
        detail::scan_linear(w, nullptr, &sn_w, nullptr, ec);

        const std::size_t lcp = detail::common_prefix(sn_w, sn_p, rc);
        const bool exact = m == L && lcp == m;
        if ((kind == MatchKind::Swap || kind == MatchKind::Mismatch) && exact) {
            res.positions.push_back(j + 1);
            continue;
        }
        if (kind == MatchKind::Swap &&
            detail::abs_mismatches(sn_w, sn_p, rc) > 3)
            continue; // a single adjacent swap moves at most 3 entries

        std::copy(w.rbegin(), w.rend(), wrev.begin());
        detail::scan_linear(wrev, &rtl_w, nullptr, nullptr, ec);
        std::reverse(rtl_w.begin(), rtl_w.end());
        const std::size_t lcs = detail::common_suffix(rtl_w, rtl_p, rc);

        ++res.counters.windows_full_checked;
        bool hit = false;
        auto verify = [&](const Sequence& s) {
            detail::scan_linear(s, nullptr, &sn_v, nullptr, ec);
            return detail::common_prefix(sn_v, sn_p, rc) == m && sn_v.size() == m;
        };

        switch (kind) {
            case MatchKind::Swap: {
                // swapping i,i+1 keeps w[0..i-1] and w[i+2..] intact
                const std::size_t lo = m - 1 >= lcs + 1 ? m - 1 - lcs - 1 : 0;
                const std::size_t hi = std::min(lcp, m - 2);
                scratch = w;
                for (std::size_t i = lo; i <= hi && i + 1 < m; ++i) {
                    std::swap(scratch[i], scratch[i + 1]);
                    if (verify(scratch)) {
                        hit = true;
                        break;
                    }
                    std::swap(scratch[i], scratch[i + 1]);
                }
                break;
            }
            case MatchKind::Mismatch: {
                const std::size_t lo = m >= lcs + 1 ? m - 1 - lcs : 0;
                const std::size_t hi = std::min(lcp, m - 1);
                scratch = w;
                for (std::size_t i = lo; i <= hi && !hit; ++i) {
                    for (Value v : detail::replacement_candidates(w, i)) {
                        scratch[i] = v;
                        if (verify(scratch)) {
                            hit = true;
                            break;
                        }
                    }
                    scratch[i] = w[i];
                }
                break;
            }
            case MatchKind::Insertion: {
                // deleting window position i must keep both fringes matching
                const std::size_t lo = m >= lcs ? m - lcs : 0;
                const std::size_t hi = std::min(lcp, m);
                for (std::size_t i = lo; i <= hi; ++i) {
                    if (verify(detail::erase_at(w, i))) {
                        hit = true;
                        break;
                    }
                }
                break;
            }
            case MatchKind::Deletion: {
                const std::size_t lo = m - 1 >= lcs ? m - 1 - lcs : 0;
                const std::size_t hi = std::min(lcp, m - 1);
                for (std::size_t i = lo; i <= hi; ++i) {
                    ++*rc;
                    if (sn_w == sn_p_del[i]) {
                        hit = true;
                        break;
                    }
                }
                break;
            }
            case MatchKind::Exact:
                break;
        }
        if (hit) res.positions.push_back(j + 1);
    }
    return res;
}

} // namespace cfm
