#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include <cfm/sequence.hpp>

namespace cfm {

/// Per-position signed distance to the nearest preceding element that is
/// <= the current one: +d when that element is strictly smaller, -d when it
/// is equal, 0 when no such element exists.
using ParentDistance = std::vector<std::int32_t>;

/// Per-position signed count of earlier positions whose referent is the
/// current one; sign follows the same smaller/equal rule as ParentDistance
/// (+ when nothing precedes).
using SkippedNumber = std::vector<std::int32_t>;

/// ref[h] = first position after h holding a value <= x[h], or -1.
/// Positions are 1-based to match the match-output convention.
using ReferentTable = std::vector<std::int32_t>;

enum class ReprKind { ParentDistance, SkippedNumber };

namespace detail {

// One monotone-stack pass computing PD, SN and ref together. The stack holds
// positions whose values are non-decreasing bottom to top (the rightmost
// chain of the forest, ties included). Any output pointer may be null.
// elem_comparisons, when given, accumulates element-vs-element comparisons.
inline void scan_linear(const Sequence& x, ParentDistance* pd, SkippedNumber* sn,
                        ReferentTable* ref, std::uint64_t* elem_comparisons = nullptr) {
    const std::size_t m = x.size();
    if (pd) pd->assign(m, 0);
    if (sn) sn->assign(m, 0);
    std::vector<std::int32_t> refs(m, -1);
    std::vector<std::size_t> stack;
    stack.reserve(m);
    std::uint64_t comps = 0;

    for (std::size_t h = 0; h < m; ++h) {
        const Value v = x[h];
        std::int32_t count = 0;
        bool equal = false;
        while (!stack.empty()) {
            ++comps;
            const std::size_t top = stack.back();
            if (x[top] > v) {
                if (refs[top] < 0) {
                    refs[top] = static_cast<std::int32_t>(h + 1);
                    ++count;
                }
                stack.pop_back();
            } else {
                if (x[top] == v) {
                    // topmost of an equal run never has its referent set yet
                    refs[top] = static_cast<std::int32_t>(h + 1);
                    ++count;
                    equal = true;
                }
                break;
            }
        }
        if (pd) {
            if (stack.empty())
                (*pd)[h] = 0;
            else if (equal)
                (*pd)[h] = -static_cast<std::int32_t>(h - stack.back());
            else
                (*pd)[h] = static_cast<std::int32_t>(h - stack.back());
        }
        if (sn) (*sn)[h] = equal ? -count : count;
        stack.push_back(h);
    }
    if (ref) *ref = std::move(refs);
    if (elem_comparisons) *elem_comparisons += comps;
}

} // namespace detail

inline ParentDistance parent_distance(const Sequence& x) {
    ParentDistance pd;
    detail::scan_linear(x, &pd, nullptr, nullptr);
    return pd;
}

/// Mirror of parent_distance, anchored on the nearest following smaller or
/// equal element; equals reverse(parent_distance(reverse(x))).
inline ParentDistance parent_distance_rtl(const Sequence& x) {
    Sequence r(x.rbegin(), x.rend());
    ParentDistance pd;
    detail::scan_linear(r, &pd, nullptr, nullptr);
    std::reverse(pd.begin(), pd.end());
    return pd;
}

inline ReferentTable referent_table(const Sequence& x) {
    ReferentTable ref;
    detail::scan_linear(x, nullptr, nullptr, &ref);
    return ref;
}

inline SkippedNumber skipped_number(const Sequence& x) {
    SkippedNumber sn;
    detail::scan_linear(x, nullptr, &sn, nullptr);
    return sn;
}

// ---------------------------------------------------------------------------
// Sliding window
// ---------------------------------------------------------------------------

/// Length-m window over a text, keeping ParentDistance and SkippedNumber
/// equal to their from-scratch values after every slide. Single-owner
/// mutable state; distinct instances are independent.
///
/// Slide bookkeeping per departing head position:
///  - positions anchored on the head lose their anchor: their parent
///    distance resets to 0 and a negative skipped number turns positive;
///  - the head's referent target loses one skipped count.
/// The new element is scanned in against the maintained rightmost chain.
class WindowState {
public:
    WindowState(const Sequence& text, std::size_t m,
                ReprKind kind = ReprKind::SkippedNumber)
        : text_(&text), m_(m), cap_(m + 1), kind_(kind) {
        if (m == 0) throw std::invalid_argument("window length must be positive");
        if (m > text.size()) throw std::invalid_argument("window longer than text");
        val_.resize(cap_);
        pd_.resize(cap_);
        sn_.resize(cap_);
        ref_.resize(cap_);
        child_head_.resize(cap_);
        child_next_.resize(cap_);
        for (std::size_t i = 0; i < m_; ++i) append((*text_)[i]);
    }

    std::size_t window_length() const { return m_; }
    std::size_t start() const { return start_; } // 0-based absolute
    bool can_slide() const { return end_ < text_->size(); }
    ReprKind kind() const { return kind_; }
    std::uint64_t element_comparisons() const { return elem_comparisons_; }

    std::int32_t pd_at(std::size_t rel) const { return pd_[slot(start_ + rel)]; }
    std::int32_t sn_at(std::size_t rel) const { return sn_[slot(start_ + rel)]; }
    std::int32_t repr_at(std::size_t rel) const {
        return kind_ == ReprKind::ParentDistance ? pd_at(rel) : sn_at(rel);
    }

    std::vector<std::int32_t> pd() const { return dump(pd_); }
    std::vector<std::int32_t> sn() const { return dump(sn_); }
    std::vector<std::int32_t> repr() const {
        return kind_ == ReprKind::ParentDistance ? pd() : sn();
    }

    /// 0-based window positions whose selected-representation value changed
    /// in the last slide (the fresh tail position included). Valid until the
    /// next slide.
    const std::vector<std::size_t>& changed() const {
        return kind_ == ReprKind::ParentDistance ? changed_pd_ : changed_sn_;
    }

    void slide() {
        if (!can_slide()) throw std::out_of_range("slide past end of text");
        changed_pd_.clear();
        changed_sn_.clear();
        const std::size_t head = start_;
        const std::size_t hs = slot(head);
        const std::size_t new_start = start_ + 1;

        if (ref_[hs] >= 0) {
            // head was counted in its referent's skipped number
            const std::size_t r = static_cast<std::size_t>(ref_[hs]);
            const std::size_t rs = slot(r);
            sn_[rs] += sn_[rs] > 0 ? -1 : 1;
            changed_sn_.push_back(r - new_start);
        }
        for (std::ptrdiff_t p = child_head_[hs]; p >= 0;) {
            const std::size_t ps = slot(static_cast<std::size_t>(p));
            const std::size_t rel = static_cast<std::size_t>(p) - new_start;
            if (pd_[ps] != 0) {
                pd_[ps] = 0;
                changed_pd_.push_back(rel);
            }
            if (sn_[ps] < 0) {
                sn_[ps] = -sn_[ps];
                if (sn_[ps] != 0) changed_sn_.push_back(rel);
            }
            p = child_next_[ps];
        }
        child_head_[hs] = -1;
        if (!spine_.empty() && spine_.front() == head) spine_.pop_front();

        start_ = new_start;
        append((*text_)[end_]);
        changed_pd_.push_back(m_ - 1);
        changed_sn_.push_back(m_ - 1);
    }

private:
    std::size_t slot(std::size_t abs) const { return abs % cap_; }

    std::vector<std::int32_t> dump(const std::vector<std::int32_t>& ring) const {
        std::vector<std::int32_t> out(m_);
        for (std::size_t i = 0; i < m_; ++i) out[i] = ring[slot(start_ + i)];
        return out;
    }

    void append(Value v) {
        const std::size_t a = end_;
        const std::size_t as = slot(a);
        val_[as] = v;
        ref_[as] = -1;
        child_head_[as] = -1;
        child_next_[as] = -1;

        std::int32_t count = 0;
        bool equal = false;
        bool anchored = false;
        std::size_t anchor = 0;
        while (!spine_.empty()) {
            ++elem_comparisons_;
            const std::size_t top = spine_.back();
            const std::size_t ts = slot(top);
            if (val_[ts] > v) {
                if (ref_[ts] < 0) {
                    ref_[ts] = static_cast<std::ptrdiff_t>(a);
                    ++count;
                }
                spine_.pop_back();
            } else {
                anchored = true;
                anchor = top;
                if (val_[ts] == v) {
                    equal = true;
                    ref_[ts] = static_cast<std::ptrdiff_t>(a);
                    ++count;
                }
                break;
            }
        }
        if (anchored) {
            const std::size_t ans = slot(anchor);
            child_next_[as] = child_head_[ans];
            child_head_[ans] = static_cast<std::ptrdiff_t>(a);
            const auto d = static_cast<std::int32_t>(a - anchor);
            pd_[as] = equal ? -d : d;
        } else {
            pd_[as] = 0;
        }
        sn_[as] = equal ? -count : count;
        spine_.push_back(a);
        ++end_;
    }

    const Sequence* text_;
    std::size_t m_, cap_;
    ReprKind kind_;
    std::size_t start_ = 0, end_ = 0; // window is [start_, end_)
    std::vector<Value> val_;
    std::vector<std::int32_t> pd_, sn_;
    std::vector<std::ptrdiff_t> ref_;        // absolute referent target or -1
    std::vector<std::ptrdiff_t> child_head_; // positions anchored on a slot
    std::vector<std::ptrdiff_t> child_next_;
    std::deque<std::size_t> spine_; // non-decreasing values, bottom to top
    std::vector<std::size_t> changed_pd_, changed_sn_;
    std::uint64_t elem_comparisons_ = 0;
};

/// From-scratch window constructor matching the operation contract.
inline WindowState window_init(const Sequence& text, std::size_t m, ReprKind kind) {
    return WindowState(text, m, kind);
}

} // namespace cfm
