#pragma once

#include <vector>

#include "core.hpp"
#include "suffix_tree.hpp"
#include "text_index.hpp"

namespace lzk {

/// Longest closed factorization queries over the suffix tree. Holds the
/// precomputed P array; the binary-search mode answers the same queries
/// without it.
class ClosedFactorizer {
public:
    enum class Mode { PArray, BinarySearch };

    explicit ClosedFactorizer(const SuffixTree& st) : st_(&st), p_(compute_p_array(st)) {}

    /// Longest closed factorization of T[I]. A factor of length >= 2 is
    /// bordered by the label of the deepest ancestor u of leaf(b) whose
    /// subtree reaches past b; its end is the next border occurrence plus
    /// the border length. When that candidate protrudes the interval, the
    /// longest border whose candidate still fits is found by binary search.
    Factorization longest(Interval I, Mode mode = Mode::PArray) const {
        const TextIndex& idx = st_->index();
        idx.check_interval(I);
        Factorization out;
        out.algo = Algo::ClosedLongest;
        out.interval = I;
        Pos b = I.begin;
        while (b <= I.end) {
            NodeId u = mode == Mode::PArray ? parent_of_p(b) : st_->deepest_wider_ancestor_binsearch(b);
            if (u == 0 || u == st_->root()) {
                out.factors.push_back(Factor::make_literal(b, idx.text()[b]));
                b += 1;
                continue;
            }
            const Len l = st_->string_depth(u);
            const Pos j = next_border_occ(b, u);
            if (j + l - 1 <= I.end) {
                out.factors.push_back(Factor::make_copy(b, j, j + l - 1 - b + 1));
                b = j + l;
                continue;
            }
            // candidate end positions grow with the border length, so the
            // longest fitting border is found by binary search over [1..l-1]
            NodeId leaf = st_->select_leaf(b);
            auto end_of = [&](Len d) -> Pos {
                NodeId v = st_->weighted_ancestor(leaf, d);
                return next_border_occ(b, v) + d - 1;
            };
            Len lo = 1, hi = l - 1, best = 0;
            while (lo <= hi) {
                Len mid = lo + (hi - lo) / 2;
                if (end_of(mid) <= I.end) {
                    best = mid;
                    lo = mid + 1;
                } else {
                    hi = mid - 1;
                }
            }
            if (best == 0) {
                out.factors.push_back(Factor::make_literal(b, idx.text()[b]));
                b += 1;
            } else {
                Pos jb = end_of(best) - best + 1;
                out.factors.push_back(Factor::make_copy(b, jb, jb + best - 1 - b + 1));
                b = jb + best;
            }
        }
        return out;
    }

    const std::vector<NodeId>& p_array() const { return p_; }

private:
    NodeId parent_of_p(Pos b) const {
        NodeId v = p_[static_cast<size_t>(b)];
        return v == st_->root() ? 0 : st_->parent(v);
    }
    Pos next_border_occ(Pos b, NodeId u) const {
        auto r = st_->sa_range(u);
        auto j = st_->index().range_next_value(b, r->first, r->second);
        if (!j) throw Error("border occurrence must exist below a wider ancestor");
        return *j;
    }

    const SuffixTree* st_;
    std::vector<NodeId> p_;
};

inline Factorization longest_closed_substring(QueryHandle& h, Interval I,
                                              ClosedFactorizer::Mode mode = ClosedFactorizer::Mode::PArray) {
    return ClosedFactorizer(h.tree()).longest(I, mode);
}

/// Shortest closed factorization of T[I]: each factor ends at the next
/// occurrence of its first symbol; absence makes the factorization fail at
/// the reported position.
inline Factorization shortest_closed_substring(const TextIndex& idx, Interval I) {
    idx.check_interval(I);
    Factorization out;
    out.algo = Algo::ClosedShortest;
    out.interval = I;
    Pos p = I.begin;
    while (p <= I.end) {
        auto q = idx.next_char_occurrence(idx.text()[p], p);
        if (!q || *q > I.end) {
            out.failure_pos = p;
            return out;
        }
        out.factors.push_back(Factor::make_copy(p, *q, *q - p + 1));
        p = *q + 1;
    }
    return out;
}

}  // namespace lzk
