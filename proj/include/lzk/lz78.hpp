#pragma once

#include <map>
#include <vector>

#include "core.hpp"
#include "suffix_tree.hpp"

namespace lzk {

namespace detail {

/// Greedy LZ78 of T[I] over the suffix tree: one lowest-marked-ancestor call
/// per factor, locus insertion via weighted ancestor. Marks are left in the
/// handle's current epoch (FP78 reuses them as its dictionary).
inline Factorization lz78_run(QueryHandle& h, Interval I) {
    const SuffixTree& st = h.tree();
    const Text& t = h.index().text();
    Factorization out;
    out.algo = Algo::LZ78;
    out.interval = I;
    Pos b = I.begin;
    while (b <= I.end) {
        const Len rem = I.end - b + 1;
        NodeId leaf = st.select_leaf(b);
        auto hit = h.lowest_marked_ancestor(leaf, rem);
        const Len m = hit.len;
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (m == rem) {
            out.factors.push_back(Factor::make_ref78(b, hit.ref, m, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, hit.ref, m, true, t[b + m]));
            h.mark(st.weighted_ancestor(leaf, m + 1), x, m + 1);
        }
        b += out.factors.back().len;
    }
    return out;
}

}  // namespace detail

/// Substring LZ78 query; expects (and takes) a fresh epoch on the handle.
inline Factorization lz78_factorize(QueryHandle& h, Interval I) {
    h.index().check_interval(I);
    h.new_epoch();
    Factorization out = detail::lz78_run(h, I);
    out.marked_ancestor_calls = h.marked_ancestor_calls();
    out.node_visits = h.node_visits();
    return out;
}

/// Baseline LZ78 with an explicit dictionary trie, no suffix tree.
inline Factorization lz78_trie_factorize(const Text& t) {
    Factorization out;
    out.algo = Algo::LZ78;
    out.interval = {1, t.size()};
    std::vector<std::map<std::uint8_t, std::int32_t>> kids(1);  // node 0 = root
    std::vector<std::int32_t> factor_of(1, 0);
    Pos b = 1;
    while (b <= t.size()) {
        const Len rem = t.size() - b + 1;
        std::int32_t v = 0;
        Len depth = 0;
        while (depth < rem) {
            auto it = kids[static_cast<size_t>(v)].find(t[b + depth]);
            if (it == kids[static_cast<size_t>(v)].end()) break;
            v = it->second;
            ++depth;
        }
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (depth == rem) {
            out.factors.push_back(Factor::make_ref78(b, factor_of[static_cast<size_t>(v)], depth, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, factor_of[static_cast<size_t>(v)], depth, true, t[b + depth]));
            kids[static_cast<size_t>(v)][t[b + depth]] = static_cast<std::int32_t>(kids.size());
            kids.emplace_back();
            factor_of.push_back(x);
        }
        b += out.factors.back().len;
    }
    return out;
}

}  // namespace lzk
