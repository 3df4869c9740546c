#pragma once

#include "core.hpp"
#include "suffix_tree.hpp"
#include "text_index.hpp"

namespace lzk {

/// Full-text lexparse via PLCP and Phi: a factor copies PLCP[dst] symbols
/// from the lexicographically preceding suffix, or is a literal.
inline Factorization lexparse_full(const TextIndex& idx) {
    Factorization out;
    out.algo = Algo::Lexparse;
    out.interval = {1, idx.n()};
    Pos dst = 1;
    while (dst <= idx.n()) {
        Len l = idx.plcp()[static_cast<size_t>(dst)];
        if (l == 0) {
            out.factors.push_back(Factor::make_literal(dst, idx.text()[dst]));
            dst += 1;
        } else {
            out.factors.push_back(Factor::make_copy(dst, idx.phi()[static_cast<size_t>(dst)], l));
            dst += l;
        }
    }
    return out;
}

/// Standalone lexparse of T[I] from substring-suffix rank/select over the
/// fixed query interval; reference lengths are capped at the source's
/// truncated-suffix length and at the factor's right edge.
inline Factorization lexparse_substring(QueryHandle& h, Interval I) {
    const TextIndex& idx = h.index();
    idx.check_interval(I);
    auto order = idx.suffix_order(I);
    Factorization out;
    out.algo = Algo::Lexparse;
    out.interval = I;
    Pos b = I.begin;
    while (b <= I.end) {
        Len k = order.rank(b);
        Len l = 0;
        Pos j = 0;
        if (k > 1) {
            j = order.select(k - 1);
            l = std::min<Len>(idx.lce(b, j), I.end - j + 1);
            l = std::min<Len>(l, I.end - b + 1);
        }
        if (l == 0) {
            out.factors.push_back(Factor::make_literal(b, idx.text()[b]));
            b += 1;
        } else {
            out.factors.push_back(Factor::make_copy(b, j, l));
            b += l;
        }
    }
    return out;
}

}  // namespace lzk
