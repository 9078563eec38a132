#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <cfm/forest.hpp>

namespace cfm {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Schroder trees
// ---------------------------------------------------------------------------

/// Planar tree whose internal nodes have at least two children; leaves are
/// nodes with none. An n-node forest maps to an (n+1)-leaf tree.
struct SchroderTree {
    struct Node {
        std::vector<std::uint32_t> children;
    };
    std::vector<Node> nodes;
    std::uint32_t root = 0;

    SchroderTree() { nodes.emplace_back(); } // single leaf

    std::size_t leaf_count() const {
        std::size_t c = 0;
        for (const Node& n : nodes)
            if (n.children.empty()) ++c;
        return c;
    }
};

/// Forest -> Schroder tree: an empty forest becomes a leaf; k roots become a
/// node with k+1 children, the first from left(r1), the rest from the
/// successive right sub-forests.
inline SchroderTree cf_to_schroder(const Forest& f) {
    if (!validate_forest(f)) throw std::invalid_argument("cf_to_schroder: invalid forest");
    SchroderTree t;
    t.nodes.clear();

    struct Task {
        const std::vector<Forest::NodeId>* level;
        std::uint32_t parent; // npos = produce the root
    };
    constexpr std::uint32_t npos = 0xffffffffu;
    std::vector<Task> work;
    work.push_back({&f.roots, npos});
    while (!work.empty()) {
        Task task = work.back();
        work.pop_back();
        const auto id = static_cast<std::uint32_t>(t.nodes.size());
        t.nodes.emplace_back();
        if (task.parent == npos)
            t.root = id;
        else
            t.nodes[task.parent].children.push_back(id);
        const auto& lvl = *task.level;
        if (lvl.empty()) continue;
        // LIFO work list: queue children in reverse to emit them in order
        for (std::size_t i = lvl.size(); i-- > 0;)
            work.push_back({&f.nodes[lvl[i]].right, id});
        work.push_back({&f.nodes[lvl.front()].left, id});
    }
    return t;
}

/// Inverse direction: a leaf is the empty forest; children (c1..c(k+1))
/// become k roots with left(r1) from c1 and right(ri) from c(i+1).
inline Forest schroder_to_cf(const SchroderTree& t) {
    Forest f;
    if (t.nodes.empty()) throw std::invalid_argument("schroder_to_cf: empty tree");

    struct Task {
        std::uint32_t tree_node;
        std::uint32_t owner; // forest node receiving the level; npos = top
        bool as_left;
    };
    constexpr std::uint32_t npos = 0xffffffffu;
    std::vector<bool> seen(t.nodes.size(), false);
    std::vector<Task> work;
    work.push_back({t.root, npos, false});
    while (!work.empty()) {
        Task task = work.back();
        work.pop_back();
        if (task.tree_node >= t.nodes.size())
            throw std::invalid_argument("schroder_to_cf: node id out of range");
        if (seen[task.tree_node])
            throw std::invalid_argument("schroder_to_cf: shared or cyclic node");
        seen[task.tree_node] = true;
        const auto& children = t.nodes[task.tree_node].children;
        if (children.empty()) continue; // leaf: empty level
        if (children.size() < 2)
            throw std::invalid_argument("schroder_to_cf: internal node with fewer than 2 children");

        const std::size_t k = children.size() - 1;
        std::vector<Forest::NodeId> level(k);
        for (std::size_t i = 0; i < k; ++i) {
            level[i] = static_cast<Forest::NodeId>(f.nodes.size());
            f.nodes.emplace_back();
        }
        work.push_back({children[0], level[0], true});
        for (std::size_t i = 1; i < children.size(); ++i)
            work.push_back({children[i], level[i - 1], false});

        if (task.owner == npos)
            f.roots = std::move(level);
        else if (task.as_left)
            f.nodes[task.owner].left = std::move(level);
        else
            f.nodes[task.owner].right = std::move(level);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Parentheses words
// ---------------------------------------------------------------------------

/// Canonical word over { ( . ) } with the outermost parentheses kept:
/// '.' alone, or '(' followed by >= 2 constituent words and ')'.
inline std::string cf_to_parens(const Forest& f) {
    if (!validate_forest(f)) throw std::invalid_argument("cf_to_parens: invalid forest");
    return forest_key(f);
}

/// Presentation form: the outermost parentheses are dropped (they surround
/// every non-trivial word, so nothing is lost).
inline std::string parens_display(std::string_view canonical) {
    if (canonical.size() >= 2 && canonical.front() == '(' && canonical.back() == ')')
        return std::string(canonical.substr(1, canonical.size() - 2));
    return std::string(canonical);
}

/// Parses a word in canonical or display form. A display-form word is a
/// top-level run of two or more constituents and is re-wrapped; a single
/// top-level constituent is already canonical.
inline Forest parens_to_cf(std::string_view w) {
    if (w.empty()) throw std::invalid_argument("parens word: empty input");

    // decompose into top-level constituents
    std::vector<std::pair<std::size_t, std::size_t>> parts; // [begin, end)
    std::size_t depth = 0, begin = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const char c = w[i];
        if (c == '(') {
            if (depth == 0) begin = i;
            ++depth;
        } else if (c == ')') {
            if (depth == 0) throw std::invalid_argument("parens word: unbalanced ')'");
            if (--depth == 0) parts.push_back({begin, i + 1});
        } else if (c == '.') {
            if (depth == 0) parts.push_back({i, i + 1});
        } else {
            throw std::invalid_argument(std::string("parens word: unexpected character '") + c + "'");
        }
    }
    if (depth != 0) throw std::invalid_argument("parens word: unbalanced '('");

    std::string canonical;
    if (parts.size() == 1 && parts[0].first == 0 && parts[0].second == w.size()) {
        canonical = std::string(w);
    } else {
        canonical.reserve(w.size() + 2);
        canonical.push_back('(');
        canonical.append(w);
        canonical.push_back(')');
    }

    // iterative parse of the canonical word; frames own the levels being built
    Forest f;
    struct Frame {
        std::vector<std::vector<Forest::NodeId>> groups; // parsed constituents
    };
    std::vector<Frame> frames;
    frames.emplace_back(); // collects the outermost word
    for (std::size_t i = 0; i < canonical.size(); ++i) {
        const char c = canonical[i];
        if (c == '(') {
            frames.emplace_back();
        } else if (c == '.') {
            frames.back().groups.emplace_back(); // empty forest
        } else { // ')'
            Frame done = std::move(frames.back());
            frames.pop_back();
            if (done.groups.size() < 2)
                throw std::invalid_argument("parens word: group with fewer than 2 constituents");
            // k+1 constituents -> k nodes
            const std::size_t k = done.groups.size() - 1;
            std::vector<Forest::NodeId> level(k);
            for (std::size_t j = 0; j < k; ++j) {
                level[j] = static_cast<Forest::NodeId>(f.nodes.size());
                f.nodes.emplace_back();
            }
            f.nodes[level[0]].left = std::move(done.groups[0]);
            for (std::size_t j = 1; j < done.groups.size(); ++j)
                f.nodes[level[j - 1]].right = std::move(done.groups[j]);
            frames.back().groups.push_back(std::move(level));
        }
    }
    if (frames.size() != 1 || frames.back().groups.size() != 1)
        throw std::invalid_argument("parens word: not a single word");
    f.roots = std::move(frames.back().groups.front());
    return f;
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// Closed-form count of n-node forests:
/// f_n = (1/n) * sum_{i=1..n} C(n,i) * C(n,i-1) * 2^(i-1), f_0 = 1.
inline BigInt count_closed_formula(unsigned n) {
    if (n == 0) return 1;
    // C(n, i) built incrementally; C(n, i-1) trails one step behind
    BigInt sum = 0;
    BigInt binom = n; // C(n, 1)
    BigInt binom_prev = 1; // C(n, 0)
    BigInt pow2 = 1;
    for (unsigned i = 1; i <= n; ++i) {
        sum += binom * binom_prev * pow2;
        binom_prev = binom;
        binom = binom * (n - i) / (i + 1);
        pow2 <<= 1;
    }
    BigInt q = sum / n;
    if (q * n != sum) throw std::logic_error("count_closed_formula: sum not divisible by n");
    return q;
}

/// Coefficients of the forest generating function up to degree n_max, from
/// the truncated fixed point of F = z*F^2*S + 1, S = z*F*S + 1 solved degree
/// by degree (g = F*S, s_n = g_{n-1}, f_n = sum f_i g_{n-1-i}).
inline std::vector<BigInt> count_series(unsigned n_max) {
    std::vector<BigInt> f(n_max + 1), s(n_max + 1), g(n_max + 1);
    f[0] = 1;
    s[0] = 1;
    g[0] = 1;
    for (unsigned n = 1; n <= n_max; ++n) {
        BigInt gn = 0; // g_{n-1} needs f_a, s_b with a+b = n-1 < n
        for (unsigned a = 0; a < n; ++a) gn += f[a] * s[n - 1 - a];
        g[n - 1] = gn;
        s[n] = gn;
        BigInt fn = 0;
        for (unsigned i = 0; i < n; ++i) fn += f[i] * g[n - 1 - i];
        f[n] = fn;
    }
    return f;
}

struct ForestCount {
    unsigned n = 0;
    BigInt value;
};

/// Cross-checked count: closed formula and series iteration must agree.
inline ForestCount count_forests(unsigned n) {
    BigInt a = count_closed_formula(n);
    BigInt b = count_series(n)[n];
    if (a != b) throw std::logic_error("count_forests: formula and series disagree");
    return {n, std::move(a)};
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

inline constexpr unsigned kEnumerateBudget = 12;

namespace detail {

// Appends a re-indexed copy of src into dst. The copied top level lands in
// dst.roots (side 0) or in the left/right list of an existing dst node
// (sides 1/2). Destinations are resolved lazily because dst.nodes grows.
inline void copy_forest_into(const Forest& src, Forest& dst, std::uint32_t owner, int side) {
    struct Task {
        const std::vector<Forest::NodeId>* level;
        std::uint32_t owner;
        int side;
    };
    std::vector<Task> work;
    work.push_back({&src.roots, owner, side});
    while (!work.empty()) {
        Task task = work.back();
        work.pop_back();
        const auto& lvl = *task.level;
        std::vector<Forest::NodeId> fresh(lvl.size());
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            fresh[i] = static_cast<Forest::NodeId>(dst.nodes.size());
            dst.nodes.emplace_back();
        }
        auto& target = task.side == 0 ? dst.roots
                     : task.side == 1 ? dst.nodes[task.owner].left
                                      : dst.nodes[task.owner].right;
        target.insert(target.end(), fresh.begin(), fresh.end());
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            const Forest::Node& n = src.nodes[lvl[i]];
            if (!n.left.empty()) work.push_back({&n.left, fresh[i], 1});
            if (!n.right.empty()) work.push_back({&n.right, fresh[i], 2});
        }
    }
}

} // namespace detail

/// Streams every structurally distinct forest with exactly n nodes. The
/// grammar is the unique decomposition: a non-empty forest is a first root
/// with a left forest, a right forest, and a chain of siblings that each
/// carry only a right forest.
inline void for_each_forest(unsigned n, const std::function<void(const Forest&)>& visit) {
    if (n > kEnumerateBudget) throw std::invalid_argument("for_each_forest: n exceeds enumeration budget");

    // chains are represented as forests whose first root has no left part
    std::function<void(unsigned, const std::function<void(const Forest&)>&)> gen_forest, gen_chain;

    auto compose = [](const Forest& left, const Forest& right, const Forest& chain) {
        Forest out;
        out.nodes.emplace_back();
        out.roots.push_back(0);
        detail::copy_forest_into(left, out, 0, 1);
        detail::copy_forest_into(right, out, 0, 2);
        detail::copy_forest_into(chain, out, 0, 0); // siblings after the first root
        return out;
    };

    gen_forest = [&](unsigned k, const std::function<void(const Forest&)>& emit) {
        if (k == 0) {
            emit(Forest{});
            return;
        }
        for (unsigned a = 0; a < k; ++a)
            for (unsigned b = 0; a + b < k; ++b) {
                const unsigned c = k - 1 - a - b;
                gen_forest(a, [&](const Forest& fa) {
                    gen_forest(b, [&](const Forest& fb) {
                        gen_chain(c, [&](const Forest& fc) { emit(compose(fa, fb, fc)); });
                    });
                });
            }
    };
    gen_chain = [&](unsigned k, const std::function<void(const Forest&)>& emit) {
        if (k == 0) {
            emit(Forest{});
            return;
        }
        for (unsigned b = 0; b < k; ++b) {
            const unsigned rest = k - 1 - b;
            gen_forest(b, [&](const Forest& fb) {
                gen_chain(rest, [&](const Forest& fc) {
                    Forest out;
                    out.nodes.emplace_back();
                    out.roots.push_back(0);
                    detail::copy_forest_into(fb, out, 0, 2);
                    detail::copy_forest_into(fc, out, 0, 0);
                    emit(out);
                });
            });
        }
    };

    gen_forest(n, visit);
}

inline std::vector<Forest> enumerate_forests(unsigned n) {
    std::vector<Forest> out;
    for_each_forest(n, [&](const Forest& f) { out.push_back(f); });
    return out;
}

// ---------------------------------------------------------------------------
// Schroder tree text form (for the conversion CLI)
// ---------------------------------------------------------------------------

/// "L" for a leaf, "(c1 c2 ... ck)" for an internal node.
inline std::string schroder_to_text(const SchroderTree& t) {
    std::string out;
    struct Frame {
        std::uint32_t node;
        std::size_t next;
    };
    std::vector<Frame> stack;
    stack.push_back({t.root, 0});
    while (!stack.empty()) {
        auto& fr = stack.back();
        const auto& children = t.nodes[fr.node].children;
        if (children.empty()) {
            out.push_back('L');
            stack.pop_back();
            continue;
        }
        if (fr.next == 0) out.push_back('(');
        if (fr.next >= children.size()) {
            out.push_back(')');
            stack.pop_back();
            continue;
        }
        if (fr.next > 0) out.push_back(' ');
        std::uint32_t child = children[fr.next++];
        stack.push_back({child, 0});
    }
    return out;
}

inline SchroderTree schroder_from_text(std::string_view s) {
    SchroderTree t;
    t.nodes.clear();
    std::vector<std::uint32_t> frames; // open internal nodes
    std::uint32_t last = 0xffffffffu;
    auto attach = [&](std::uint32_t id) {
        if (frames.empty()) {
            if (last != 0xffffffffu)
                throw std::invalid_argument("schroder text: more than one root");
            t.root = id;
        } else {
            t.nodes[frames.back()].children.push_back(id);
        }
        last = id;
    };
    for (char c : s) {
        if (c == ' ' || c == '\t') continue;
        if (c == 'L') {
            const auto id = static_cast<std::uint32_t>(t.nodes.size());
            t.nodes.emplace_back();
            attach(id);
        } else if (c == '(') {
            const auto id = static_cast<std::uint32_t>(t.nodes.size());
            t.nodes.emplace_back();
            attach(id);
            frames.push_back(id);
        } else if (c == ')') {
            if (frames.empty()) throw std::invalid_argument("schroder text: unbalanced ')'");
            if (t.nodes[frames.back()].children.size() < 2)
                throw std::invalid_argument("schroder text: internal node with fewer than 2 children");
            frames.pop_back();
        } else {
            throw std::invalid_argument(std::string("schroder text: unexpected character '") + c + "'");
        }
    }
    if (!frames.empty()) throw std::invalid_argument("schroder text: unbalanced '('");
    if (t.nodes.empty()) throw std::invalid_argument("schroder text: empty input");
    return t;
}

} // namespace cfm
