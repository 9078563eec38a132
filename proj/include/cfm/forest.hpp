#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <cfm/sequence.hpp>

namespace cfm {

/// Ordered forest of planar trees built over a sequence with ties.
///
/// Nodes live in an index arena; a "level" (the top level or any sub-forest)
/// is an ordered list of node ids. Structural rule: within any level only
/// the first node may carry a non-empty left sub-forest.
struct Forest {
    using NodeId = std::uint32_t;

    struct Node {
        std::vector<NodeId> left;  // ordered roots of the left sub-forest
        std::vector<NodeId> right; // ordered roots of the right sub-forest
    };

    std::vector<Node> nodes; // arena; builders keep it compact (all reachable)
    std::vector<NodeId> roots;

    bool empty() const { return roots.empty(); }
    std::size_t node_count() const { return nodes.size(); }
};

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Literal recursive definition: the roots are all positions of the minimum,
/// the slices between them become sub-forests. Quadratic worst case; this is
/// the reference builder the fast one is tested against.
inline Forest build_forest_naive(const Sequence& x) {
    Forest f;
    if (x.empty()) return f;

    // Explicit work list instead of recursion: sorted inputs nest m deep.
    struct Span {
        std::size_t lo, hi;        // half-open slice of x
        std::uint32_t owner;       // node receiving the slice, or npos for top
        bool as_left;
    };
    constexpr std::uint32_t npos = 0xffffffffu;
    std::vector<Span> work;
    work.push_back({0, x.size(), npos, false});

    while (!work.empty()) {
        Span s = work.back();
        work.pop_back();
        if (s.lo >= s.hi) continue;

        Value min_v = x[s.lo];
        for (std::size_t i = s.lo + 1; i < s.hi; ++i)
            if (x[i] < min_v) min_v = x[i];

        std::vector<std::size_t> min_pos;
        for (std::size_t i = s.lo; i < s.hi; ++i)
            if (x[i] == min_v) min_pos.push_back(i);

        std::vector<Forest::NodeId> level;
        level.reserve(min_pos.size());
        for (std::size_t i = 0; i < min_pos.size(); ++i) {
            level.push_back(static_cast<Forest::NodeId>(f.nodes.size()));
            f.nodes.emplace_back();
        }

        // first root takes the prefix slice as its left sub-forest
        work.push_back({s.lo, min_pos.front(), level.front(), true});
        for (std::size_t i = 0; i + 1 < min_pos.size(); ++i)
            work.push_back({min_pos[i] + 1, min_pos[i + 1], level[i], false});
        work.push_back({min_pos.back() + 1, s.hi, level.back(), false});

        if (s.owner == npos)
            f.roots = std::move(level);
        else if (s.as_left)
            f.nodes[s.owner].left = std::move(level);
        else
            f.nodes[s.owner].right = std::move(level);
    }
    return f;
}

/// Left-to-right construction keeping a stack of the open levels on the
/// rightmost chain (level minima strictly increase with depth). Amortized
/// constant per element.
inline Forest build_forest_online(const Sequence& x) {
    Forest f;
    f.nodes.reserve(x.size());

    struct Level {
        Value min;
        std::uint32_t owner; // node whose .right holds the level; npos = top
    };
    constexpr std::uint32_t npos = 0xffffffffu;
    std::vector<Level> open;

    auto level_list = [&](const Level& l) -> std::vector<Forest::NodeId>& {
        return l.owner == npos ? f.roots : f.nodes[l.owner].right;
    };

    for (Value v : x) {
        const auto id = static_cast<Forest::NodeId>(f.nodes.size());
        f.nodes.emplace_back();
        while (!open.empty() && open.back().min > v) open.pop_back();

        if (open.empty()) {
            // new global minimum: everything so far hangs to its left
            f.nodes[id].left = std::move(f.roots);
            f.roots = {id};
            open.push_back({v, npos});
        } else if (open.back().min == v) {
            level_list(open.back()).push_back(id);
        } else {
            // v opens a deeper level under the last root of the current one
            Forest::NodeId r = level_list(open.back()).back();
            f.nodes[id].left = std::move(f.nodes[r].right);
            f.nodes[r].right = {id};
            open.push_back({v, r});
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Validation and canonical serialization
// ---------------------------------------------------------------------------

/// Checks the structural rule on every level: non-first roots must have empty
/// left sub-forests. Also rejects out-of-range ids and shared/cyclic nodes,
/// which can only appear in hand-built or deserialized input.
inline bool validate_forest(const Forest& f) {
    std::vector<bool> seen(f.nodes.size(), false);
    std::vector<std::pair<const std::vector<Forest::NodeId>*, std::size_t>> stack;
    stack.push_back({&f.roots, 0});
    while (!stack.empty()) {
        auto& [level, idx] = stack.back();
        if (idx >= level->size()) {
            stack.pop_back();
            continue;
        }
        Forest::NodeId id = (*level)[idx];
        bool first = idx == 0;
        ++idx;
        if (id >= f.nodes.size() || seen[id]) return false;
        seen[id] = true;
        const Forest::Node& n = f.nodes[id];
        if (!first && !n.left.empty()) return false;
        if (!n.left.empty()) stack.push_back({&n.left, 0});
        if (!n.right.empty()) stack.push_back({&n.right, 0});
    }
    return true;
}

/// Canonical text form, the equality key: '.' for an empty forest, otherwise
/// "(w1 w2 ... w(k+1))" where w1 serializes left(r1) and w(i) serializes
/// right(r(i-1)). Grammar also drives the combinatorial bijections.
inline std::string forest_key(const Forest& f) {
    std::string out;
    out.reserve(3 * f.nodes.size() + 1);

    // frame: emit one level; phase = next child word to produce
    struct Frame {
        const std::vector<Forest::NodeId>* level;
        std::size_t phase;
    };
    std::vector<Frame> stack;
    stack.push_back({&f.roots, 0});
    while (!stack.empty()) {
        auto& fr = stack.back();
        const auto& lvl = *fr.level;
        if (lvl.empty()) {
            out.push_back('.');
            stack.pop_back();
            continue;
        }
        if (fr.phase == 0) out.push_back('(');
        if (fr.phase > lvl.size()) {
            out.push_back(')');
            stack.pop_back();
            continue;
        }
        const std::vector<Forest::NodeId>* child =
            fr.phase == 0 ? &f.nodes[lvl.front()].left
                          : &f.nodes[lvl[fr.phase - 1]].right;
        ++fr.phase;
        stack.push_back({child, 0});
    }
    return out;
}

inline bool forests_equal(const Forest& a, const Forest& b) {
    if (a.node_count() != b.node_count()) return false;
    return forest_key(a) == forest_key(b);
}

/// Witness sequence: roots at nesting depth d get value d, emitted in
/// left(r1), r1, right(r1), r2, right(r2), ... order, so rebuilding the
/// forest from the result reproduces the input structure.
inline Sequence canonical_sequence(const Forest& f) {
    if (!validate_forest(f)) throw std::invalid_argument("canonical_sequence: invalid forest");
    Sequence out;
    out.reserve(f.node_count());

    struct Frame {
        const std::vector<Forest::NodeId>* level;
        std::size_t phase; // 0 = left of first root, then root/right pairs
        Value depth;
    };
    std::vector<Frame> stack;
    stack.push_back({&f.roots, 0, 1});
    while (!stack.empty()) {
        auto& fr = stack.back();
        const auto& lvl = *fr.level;
        if (lvl.empty() || fr.phase > lvl.size()) {
            stack.pop_back();
            continue;
        }
        if (fr.phase == 0) {
            ++fr.phase;
            const auto& left = f.nodes[lvl.front()].left;
            if (!left.empty()) stack.push_back({&left, 0, fr.depth + 1});
        } else {
            Forest::NodeId r = lvl[fr.phase - 1];
            ++fr.phase;
            out.push_back(fr.depth);
            const auto& right = f.nodes[r].right;
            if (!right.empty()) stack.push_back({&right, 0, fr.depth + 1});
        }
    }
    return out;
}

} // namespace cfm
