#pragma once

#include <vector>

#include "core.hpp"
#include "lz78.hpp"
#include "sparse_table.hpp"
#include "suffix_tree.hpp"

namespace lzk {

/// FP78: flexible parsing over the fixed LZ78 dictionary of the full text.
/// A reference is admissible at position p iff its factor ends before p, so
/// per-position matches are pure functions and safe to memoize.
inline Factorization fp78_factorize(QueryHandle& h) {
    const SuffixTree& st = h.tree();
    const Text& t = h.index().text();
    const Pos n = t.size();
    h.new_epoch();
    Factorization lz = detail::lz78_run(h, {1, n});
    std::vector<Pos> end_of(lz.factors.size() + 1, 0);
    for (size_t x = 0; x < lz.factors.size(); ++x)
        end_of[x + 1] = lz.factors[x].pos + lz.factors[x].len - 1;

    Factorization out;
    out.algo = Algo::FP78;
    out.interval = {1, n};
    auto match_at = [&](Pos p) -> QueryHandle::Ref {
        Len m;
        std::int32_t id;
        if (h.memo_get(p, m, id)) return {m, id};
        auto hit = h.lowest_marked_ancestor_where(st.select_leaf(p), n, [&](std::int32_t y) { return end_of[static_cast<size_t>(y)] < p; });
        h.memo_put(p, hit.len, hit.ref);
        return {hit.len, hit.ref};
    };
    Pos b = 1;
    while (b <= n) {
        const Len rem = n - b + 1;
        const Len m = match_at(b).len;
        NodeId leaf = st.select_leaf(b);
        const Len l0 = std::min<Len>(m + 1, rem);
        Len best_l = 1, best_v = 0;
        for (Len l1 = 1; l1 <= l0; ++l1) {
            const Pos p = b + l1;
            Len adv = 0;
            if (p <= n) adv = std::min<Len>(match_at(p).len + 1, n - p + 1);
            if (l1 + adv >= best_v) {
                best_v = l1 + adv;
                best_l = l1;
            }
        }
        if (best_l == 1) {
            if (b == n && m >= 1)
                out.factors.push_back(Factor::make_ref78(b, h.ref_of_length(leaf, 1), 1, false, 0));
            else
                out.factors.push_back(Factor::make_ref78(b, 0, 0, true, t[b]));
        } else if (b + best_l - 1 == n && best_l <= m) {
            out.factors.push_back(Factor::make_ref78(b, h.ref_of_length(leaf, best_l), best_l, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, h.ref_of_length(leaf, best_l - 1), best_l - 1, true, t[b + best_l - 1]));
        }
        b += best_l;
    }
    out.marked_ancestor_calls = h.marked_ancestor_calls();
    out.node_visits = h.node_visits();
    return out;
}

/// FPA78 per the deferred-insertion discipline: a reference created at a
/// factor start enters the dictionary once the cursor has passed its end;
/// inner lookups are memoized at first touch, the factor-start lookup is
/// always fresh and defines the new reference.
inline Factorization fpa78_factorize(QueryHandle& h) {
    const SuffixTree& st = h.tree();
    const Text& t = h.index().text();
    const Pos n = t.size();
    h.new_epoch();

    Factorization out;
    out.algo = Algo::FPA78;
    out.interval = {1, n};
    struct RefRec {
        Pos start;
        Len len;
        Pos end;
    };
    std::vector<RefRec> refs;      // id = index + 1
    std::vector<std::int32_t> pending;  // ref ids not yet inserted
    auto fresh = [&](Pos p) -> QueryHandle::Hit { return h.lowest_marked_ancestor(st.select_leaf(p)); };
    Pos b = 1;
    while (b <= n) {
        size_t keep = 0;
        for (size_t i = 0; i < pending.size(); ++i) {  // id order: first id wins at shared loci
            const auto& r = refs[static_cast<size_t>(pending[i]) - 1];
            if (r.end < b)
                h.mark(st.weighted_ancestor(st.select_leaf(r.start), r.len), pending[i], r.len);
            else
                pending[keep++] = pending[i];
        }
        pending.resize(keep);
        const Len rem = n - b + 1;
        auto hit = fresh(b);
        const Len m = hit.len;
        const std::int32_t id_b = hit.ref;
        const Len l0 = std::min<Len>(m + 1, rem);
        refs.push_back({b, l0, b + l0 - 1});
        pending.push_back(static_cast<std::int32_t>(refs.size()));
        Len best_l = 1, best_v = 0;
        for (Len l1 = 1; l1 <= l0; ++l1) {
            const Pos p = b + l1;
            Len adv = 0;
            if (p <= n) {
                Len mp;
                std::int32_t idp;
                if (!h.memo_get(p, mp, idp)) {
                    auto ph = fresh(p);
                    mp = ph.len;
                    h.memo_put(p, ph.len, ph.ref);
                }
                adv = std::min<Len>(mp + 1, n - p + 1);
            }
            if (l1 + adv >= best_v) {
                best_v = l1 + adv;
                best_l = l1;
            }
        }
        if (best_l == 1) {
            if (b == n && m >= 1)
                out.factors.push_back(Factor::make_ref78(b, id_b, 1, false, 0));
            else
                out.factors.push_back(Factor::make_ref78(b, 0, 0, true, t[b]));
        } else if (b + best_l - 1 == n && best_l <= m) {
            out.factors.push_back(Factor::make_ref78(b, id_b, best_l, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, id_b, best_l - 1, true, t[b + best_l - 1]));
        }
        const Len used = out.factors.back().ref_len;
        if (used >= 1 && !h.try_ref_of_length(st.select_leaf(b), used)) ++out.ref_prefix_gaps;
        b += best_l;
    }
    out.marked_ancestor_calls = h.marked_ancestor_calls();
    out.node_visits = h.node_visits();
    return out;
}

/// Semi-greedy LZ77 of T[1..prefix_end]: pick the copy length whose follow-up
/// greedy factor reaches furthest, via a range-maximum over f(i) = LPF[i] + i.
/// Ties go to the longer current factor (rightmost maximum).
inline Factorization semi_greedy_lz77(const TextIndex& idx, Pos prefix_end) {
    const Pos n = idx.n();
    if (prefix_end < 1 || prefix_end > n) throw BadPosition(prefix_end);
    std::vector<Len> lpf;
    std::vector<Pos> src;
    idx.lpf(lpf, src);
    std::vector<Pos> f(static_cast<size_t>(n) + 2, 0);
    for (Pos i = 1; i <= n; ++i) f[static_cast<size_t>(i)] = i + lpf[static_cast<size_t>(i)];
    f[static_cast<size_t>(n) + 1] = n + 1;  // empty tail: no further advance
    SparseTable<Pos, true, true> rmq(f);

    Factorization out;
    out.algo = Algo::SemiGreedyLZ77;
    out.interval = {1, prefix_end};
    Pos dst = 1;
    while (dst <= prefix_end) {
        const Len l = lpf[static_cast<size_t>(dst)];
        if (l == 0) {
            out.factors.push_back(Factor::make_literal(dst, idx.text()[dst]));
            dst += 1;
            continue;
        }
        Pos q = static_cast<Pos>(rmq.arg(static_cast<size_t>(dst) + 1, static_cast<size_t>(dst + l)));
        Len len = std::min<Len>(q - dst, prefix_end - dst + 1);
        out.factors.push_back(Factor::make_copy(dst, src[static_cast<size_t>(dst)], len));
        dst += len;
    }
    return out;
}

}  // namespace lzk
