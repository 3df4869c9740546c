#pragma once

#include "core.hpp"
#include "suffix_tree.hpp"

namespace lzk {

/// Standalone LZD of T[I]: each factor concatenates the two longest
/// earlier-factor-or-symbol prefixes of the remainder. Two lowest-marked-
/// ancestor calls per factor; loci are marked via weighted ancestor.
inline Factorization lzd_factorize(QueryHandle& h, Interval I) {
    h.index().check_interval(I);
    const SuffixTree& st = h.tree();
    const Text& t = h.index().text();
    h.new_epoch();
    Factorization out;
    out.algo = Algo::LZD;
    out.interval = I;
    Pos b = I.begin;
    while (b <= I.end) {
        auto hit1 = h.lowest_marked_ancestor(st.select_leaf(b), I.end - b + 1);
        Len l1 = hit1.len;
        Component c1 = l1 ? Component::reference(hit1.ref, l1) : Component::literal(t[b]);
        if (!l1) l1 = 1;
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (b + l1 - 1 == I.end) {
            out.factors.push_back(Factor::make_pair(b, c1, Component::absent()));
            break;
        }
        auto hit2 = h.lowest_marked_ancestor(st.select_leaf(b + l1), I.end - (b + l1) + 1);
        Len l2 = hit2.len;
        Component c2 = l2 ? Component::reference(hit2.ref, l2) : Component::literal(t[b + l1]);
        if (!l2) l2 = 1;
        out.factors.push_back(Factor::make_pair(b, c1, c2));
        h.mark(st.weighted_ancestor(st.select_leaf(b), l1 + l2), x, l1 + l2);
        b += l1 + l2;
    }
    out.marked_ancestor_calls = h.marked_ancestor_calls();
    out.node_visits = h.node_visits();
    return out;
}

/// Standalone LZMW of T[I]: each factor is the longest dictionary element or
/// symbol; after factor x the concatenation F_{x-1}F_x enters the dictionary
/// under reference id x. One lowest-marked-ancestor call per factor.
inline Factorization lzmw_factorize(QueryHandle& h, Interval I) {
    h.index().check_interval(I);
    const SuffixTree& st = h.tree();
    const Text& t = h.index().text();
    h.new_epoch();
    Factorization out;
    out.algo = Algo::LZMW;
    out.interval = I;
    Pos b = I.begin, prev_start = 0;
    while (b <= I.end) {
        auto hit = h.lowest_marked_ancestor(st.select_leaf(b), I.end - b + 1);
        Len m = hit.len;
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (m == 0) {
            out.factors.push_back(Factor::make_pair(b, Component::literal(t[b]), Component::absent()));
            m = 1;
        } else {
            out.factors.push_back(Factor::make_pair(b, Component::reference(hit.ref, m), Component::absent()));
        }
        if (x >= 2) {
            Len pair_len = b + m - prev_start;
            h.mark(st.weighted_ancestor(st.select_leaf(prev_start), pair_len), x, pair_len);
        }
        prev_start = b;
        b += m;
    }
    out.marked_ancestor_calls = h.marked_ancestor_calls();
    out.node_visits = h.node_visits();
    return out;
}

}  // namespace lzk
