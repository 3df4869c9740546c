#pragma once

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "core.hpp"

// Brute-force reference implementations of every factorization, transcribed
// from the definitions. They operate on a standalone string in local 1-based
// coordinates and share nothing with the index-based modules beyond the
// Text/Factor types.

namespace lzk::oracle {

inline bool match_at(const Text& s, Pos at, Pos src, Len len) {
    if (at + len - 1 > s.size()) return false;
    return std::memcmp(s.bytes().data() + at - 1, s.bytes().data() + src - 1, static_cast<size_t>(len)) == 0;
}

inline Len scan_lce(const Text& s, Pos i, Pos j) {
    Len l = 0;
    while (i + l <= s.size() && j + l <= s.size() && s[i + l] == s[j + l]) ++l;
    return l;
}

struct DictEntry {
    Pos start = 0;  // where the entry's string occurs
    Len len = 0;
    Pos end = 0;  // start + len - 1 in the coordinates the entry was created
    std::int32_t id = 0;
};

inline Factorization naive_lz78(const Text& s) {
    Factorization out;
    out.algo = Algo::LZ78;
    out.interval = {1, s.size()};
    std::vector<DictEntry> dict;
    Pos b = 1;
    while (b <= s.size()) {
        const Len rem = s.size() - b + 1;
        Len m = 0;
        std::int32_t id = 0;
        for (const auto& d : dict)
            if (d.len > m && d.len <= rem && match_at(s, b, d.start, d.len)) {
                m = d.len;
                id = d.id;
            }
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (m == rem) {
            out.factors.push_back(Factor::make_ref78(b, id, m, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, id, m, true, s[b + m]));
            dict.push_back({b, m + 1, b + m, x});
        }
        b += out.factors.back().len;
    }
    return out;
}

// Longest LZ78 dictionary element matching at p whose factor ends before
// `before`; elements are the factors of `lz` over the same string.
inline std::pair<Len, std::int32_t> fp78_match(const Text& s, const Factorization& lz, Pos p, Pos before) {
    Len m = 0;
    std::int32_t id = 0;
    for (size_t x = 0; x < lz.factors.size(); ++x) {
        const Factor& f = lz.factors[x];
        Pos end = f.pos + f.len - 1;
        if (end >= before || f.len <= m) continue;
        if (match_at(s, p, f.pos, f.len)) {
            m = f.len;
            id = static_cast<std::int32_t>(x) + 1;
        }
    }
    return {m, id};
}

// Id of the admissible LZ78 element of exactly the given length matching at p.
inline std::int32_t fp78_ref_of_len(const Text& s, const Factorization& lz, Pos p, Len len) {
    for (size_t x = 0; x < lz.factors.size(); ++x) {
        const Factor& f = lz.factors[x];
        if (f.len == len && match_at(s, p, f.pos, f.len)) return static_cast<std::int32_t>(x) + 1;
    }
    return 0;
}

inline Factorization naive_fp78(const Text& s) {
    Factorization out;
    out.algo = Algo::FP78;
    out.interval = {1, s.size()};
    const Factorization lz = naive_lz78(s);
    const Pos n = s.size();
    auto advance_at = [&](Pos p) -> Len {
        if (p > n) return 0;
        auto [m, id] = fp78_match(s, lz, p, p);
        (void)id;
        return std::min<Len>(m + 1, n - p + 1);
    };
    Pos b = 1;
    while (b <= n) {
        auto [m, id_at_b] = fp78_match(s, lz, b, b);
        (void)id_at_b;
        const Len l0 = std::min<Len>(m + 1, n - b + 1);
        Len best_l = 1, best_v = 0;
        for (Len l1 = 1; l1 <= l0; ++l1) {
            Len v = l1 + advance_at(b + l1);
            if (v >= best_v) {
                best_v = v;
                best_l = l1;
            }
        }
        if (best_l == 1) {
            if (b == n && m >= 1)
                out.factors.push_back(Factor::make_ref78(b, fp78_ref_of_len(s, lz, b, 1), 1, false, 0));
            else
                out.factors.push_back(Factor::make_ref78(b, 0, 0, true, s[b]));
        } else if (b + best_l - 1 == n && best_l <= m) {
            out.factors.push_back(Factor::make_ref78(b, fp78_ref_of_len(s, lz, b, best_l), best_l, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, fp78_ref_of_len(s, lz, b, best_l - 1), best_l - 1, true, s[b + best_l - 1]));
        }
        b += best_l;
    }
    return out;
}

inline Factorization naive_fpa78(const Text& s) {
    Factorization out;
    out.algo = Algo::FPA78;
    out.interval = {1, s.size()};
    const Pos n = s.size();
    std::vector<DictEntry> refs;  // entry y active once cursor >= end + 1
    std::vector<std::pair<Len, std::int32_t>> memo(static_cast<size_t>(n) + 2, {-1, 0});
    Pos b = 1;
    auto fresh = [&](Pos p, Pos cursor) -> std::pair<Len, std::int32_t> {
        Len m = 0;
        std::int32_t id = 0;
        for (const auto& r : refs)
            if (r.end < cursor && r.len > m && match_at(s, p, r.start, r.len)) {
                m = r.len;
                id = r.id;
            }
        return {m, id};
    };
    while (b <= n) {
        auto [m, id_b] = fresh(b, b);
        const Len l0 = std::min<Len>(m + 1, n - b + 1);
        refs.push_back({b, l0, b + l0 - 1, static_cast<std::int32_t>(refs.size()) + 1});
        Len best_l = 1, best_v = 0;
        for (Len l1 = 1; l1 <= l0; ++l1) {
            const Pos p = b + l1;
            Len adv = 0;
            if (p <= n) {
                auto& slot = memo[static_cast<size_t>(p)];
                if (slot.first < 0) slot = fresh(p, b);
                adv = std::min<Len>(slot.first + 1, n - p + 1);
            }
            Len v = l1 + adv;
            if (v >= best_v) {
                best_v = v;
                best_l = l1;
            }
        }
        if (best_l == 1) {
            if (b == n && m >= 1)
                out.factors.push_back(Factor::make_ref78(b, id_b, 1, false, 0));
            else
                out.factors.push_back(Factor::make_ref78(b, 0, 0, true, s[b]));
        } else if (b + best_l - 1 == n && best_l <= m) {
            out.factors.push_back(Factor::make_ref78(b, id_b, best_l, false, 0));
        } else {
            out.factors.push_back(Factor::make_ref78(b, id_b, best_l - 1, true, s[b + best_l - 1]));
        }
        b += best_l;
    }
    return out;
}

inline std::vector<Len> brute_lpf(const Text& s) {
    std::vector<Len> lpf(static_cast<size_t>(s.size()) + 2, 0);
    for (Pos j = 1; j <= s.size(); ++j)
        for (Pos i = 1; i < j; ++i) lpf[static_cast<size_t>(j)] = std::max(lpf[static_cast<size_t>(j)], scan_lce(s, i, j));
    return lpf;
}

inline Factorization naive_sg_lz77(const Text& s, Pos prefix_end) {
    Factorization out;
    out.algo = Algo::SemiGreedyLZ77;
    out.interval = {1, prefix_end};
    const Pos n = s.size();
    auto lpf = brute_lpf(s);  // lpf[n+1] = 0
    Pos dst = 1;
    while (dst <= prefix_end) {
        const Len l = lpf[static_cast<size_t>(dst)];
        if (l == 0) {
            out.factors.push_back(Factor::make_literal(dst, s[dst]));
            dst += 1;
            continue;
        }
        Pos qbest = dst + 1;
        for (Pos q = dst + 1; q <= dst + l && q <= n + 1; ++q)
            if (q + lpf[static_cast<size_t>(q)] >= qbest + lpf[static_cast<size_t>(qbest)]) qbest = q;  // rightmost maximum
        Len chosen = qbest - dst;
        Len len = std::min<Len>(chosen, prefix_end - dst + 1);
        Pos src = 0;
        for (Pos i = 1; i < dst && !src; ++i)
            if (scan_lce(s, i, dst) >= len) src = i;
        out.factors.push_back(Factor::make_copy(dst, src, len));
        dst += len;
    }
    return out;
}

inline Factorization naive_lzd(const Text& s) {
    Factorization out;
    out.algo = Algo::LZD;
    out.interval = {1, s.size()};
    const Pos n = s.size();
    std::vector<DictEntry> dict;
    auto longest = [&](Pos p) -> std::pair<Len, std::int32_t> {
        const Len rem = n - p + 1;
        Len m = 0;
        std::int32_t id = 0;
        for (const auto& d : dict)
            if (d.len > m && d.len <= rem && match_at(s, p, d.start, d.len)) {
                m = d.len;
                id = d.id;
            }
        return {m, id};
    };
    auto insert_if_new = [&](Pos start, Len len, std::int32_t id) {
        for (const auto& d : dict)
            if (d.len == len && match_at(s, start, d.start, d.len)) return;
        dict.push_back({start, len, start + len - 1, id});
    };
    Pos b = 1;
    while (b <= n) {
        auto [l1, id1] = longest(b);
        Component c1 = l1 ? Component::reference(id1, l1) : Component::literal(s[b]);
        if (!l1) l1 = 1;
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (b + l1 - 1 == n) {
            out.factors.push_back(Factor::make_pair(b, c1, Component::absent()));
            insert_if_new(b, l1, x);
            break;
        }
        auto [l2, id2] = longest(b + l1);
        Component c2 = l2 ? Component::reference(id2, l2) : Component::literal(s[b + l1]);
        if (!l2) l2 = 1;
        out.factors.push_back(Factor::make_pair(b, c1, c2));
        insert_if_new(b, l1 + l2, x);
        b += l1 + l2;
    }
    return out;
}

inline Factorization naive_lzmw(const Text& s) {
    Factorization out;
    out.algo = Algo::LZMW;
    out.interval = {1, s.size()};
    const Pos n = s.size();
    std::vector<DictEntry> dict;
    auto insert_if_new = [&](Pos start, Len len, std::int32_t id) {
        for (const auto& d : dict)
            if (d.len == len && match_at(s, start, d.start, d.len)) return;
        dict.push_back({start, len, start + len - 1, id});
    };
    Pos b = 1, prev_start = 0;
    while (b <= n) {
        const Len rem = n - b + 1;
        Len m = 0;
        std::int32_t id = 0;
        for (const auto& d : dict)
            if (d.len > m && d.len <= rem && match_at(s, b, d.start, d.len)) {
                m = d.len;
                id = d.id;
            }
        const auto x = static_cast<std::int32_t>(out.factors.size()) + 1;
        if (m == 0) {
            out.factors.push_back(Factor::make_pair(b, Component::literal(s[b]), Component::absent()));
            m = 1;
        } else {
            out.factors.push_back(Factor::make_pair(b, Component::reference(id, m), Component::absent()));
        }
        if (x >= 2) insert_if_new(prev_start, b + m - prev_start, x);
        prev_start = b;
        b += m;
    }
    return out;
}

inline Factorization naive_lexparse(const Text& s) {
    Factorization out;
    out.algo = Algo::Lexparse;
    out.interval = {1, s.size()};
    const Pos n = s.size();
    std::vector<Pos> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](Pos a, Pos b) {
        Len l = scan_lce(s, a, b);
        if (a + l > n || b + l > n) return a > b;  // shorter suffix first
        return s[a + l] < s[b + l];
    });
    std::vector<Len> rank(static_cast<size_t>(n) + 1, 0);
    for (size_t k = 0; k < order.size(); ++k) rank[static_cast<size_t>(order[k])] = static_cast<Len>(k + 1);
    Pos dst = 1;
    while (dst <= n) {
        Len k = rank[static_cast<size_t>(dst)];
        Len l = 0;
        Pos src = 0;
        if (k > 1) {
            src = order[static_cast<size_t>(k - 2)];
            l = scan_lce(s, dst, src);
        }
        if (l == 0) {
            out.factors.push_back(Factor::make_literal(dst, s[dst]));
            dst += 1;
        } else {
            out.factors.push_back(Factor::make_copy(dst, src, l));
            dst += l;
        }
    }
    return out;
}

// --- closed factorizations ---

inline bool is_closed(const Text& s, Pos b, Len m) {
    if (m == 1) return true;
    for (Len d = 1; d < m; ++d) {
        if (!match_at(s, b + m - d, b, d)) continue;  // border check
        int occ = 0;
        for (Pos p = b; p + d - 1 <= b + m - 1; ++p) occ += match_at(s, p, b, d) ? 1 : 0;
        if (occ == 2) return true;
    }
    return false;
}

/// Literal transcription: longest closed prefix by trying all lengths.
inline Factorization naive_closed_longest_pure(const Text& s) {
    Factorization out;
    out.algo = Algo::ClosedLongest;
    out.interval = {1, s.size()};
    Pos b = 1;
    while (b <= s.size()) {
        Len best = 1;
        for (Len m = s.size() - b + 1; m >= 2; --m)
            if (is_closed(s, b, m)) {
                best = m;
                break;
            }
        if (best == 1) {
            out.factors.push_back(Factor::make_literal(b, s[b]));
        } else {
            // unique witness border; locate its length for the source field
            Len d = 0;
            for (Len t = 1; t < best && !d; ++t) {
                if (!match_at(s, b + best - t, b, t)) continue;
                int occ = 0;
                for (Pos p = b; p + t - 1 <= b + best - 1; ++p) occ += match_at(s, p, b, t) ? 1 : 0;
                if (occ == 2) d = t;
            }
            out.factors.push_back(Factor::make_copy(b, b + best - d, best));
        }
        b += best;
    }
    return out;
}

/// Next-occurrence characterization: the closed prefixes ending at position
/// j_d + d - 1 where j_d is the next occurrence of the length-d prefix.
inline Factorization naive_closed_longest(const Text& s) {
    Factorization out;
    out.algo = Algo::ClosedLongest;
    out.interval = {1, s.size()};
    const Pos e = s.size();
    Pos b = 1;
    while (b <= e) {
        Len maxd = 0;
        std::vector<Len> lcpb(static_cast<size_t>(e - b) + 1, 0);  // lcpb[q-b] for q in (b..e]
        for (Pos q = b + 1; q <= e; ++q) {
            lcpb[static_cast<size_t>(q - b)] = scan_lce(s, b, q);
            maxd = std::max(maxd, lcpb[static_cast<size_t>(q - b)]);
        }
        Pos best_end = 0, best_src = 0;
        std::vector<Pos> J(static_cast<size_t>(maxd) + 1, 0);
        Len filled = 0;
        for (Pos q = b + 1; q <= e && filled < maxd; ++q)
            for (Len d = filled + 1; d <= lcpb[static_cast<size_t>(q - b)]; ++d) {
                J[static_cast<size_t>(d)] = q;
                filled = d;
            }
        for (Len d = 1; d <= maxd; ++d) {
            if (!J[static_cast<size_t>(d)]) break;
            Pos endp = J[static_cast<size_t>(d)] + d - 1;
            if (endp <= e && endp > best_end) {
                best_end = endp;
                best_src = J[static_cast<size_t>(d)];
            }
        }
        if (best_end == 0) {
            out.factors.push_back(Factor::make_literal(b, s[b]));
            b += 1;
        } else {
            out.factors.push_back(Factor::make_copy(b, best_src, best_end - b + 1));
            b = best_end + 1;
        }
    }
    return out;
}

inline Factorization naive_closed_shortest(const Text& s) {
    Factorization out;
    out.algo = Algo::ClosedShortest;
    out.interval = {1, s.size()};
    const Pos e = s.size();
    Pos b = 1;
    while (b <= e) {
        Pos q = 0;
        for (Pos p = b + 1; p <= e; ++p)
            if (s[p] == s[b]) {
                q = p;
                break;
            }
        if (!q) {
            out.failure_pos = b;
            return out;
        }
        out.factors.push_back(Factor::make_copy(b, q, q - b + 1));
        b = q + 1;
    }
    return out;
}

inline Factorization naive_factorize(Algo algo, const Text& s) {
    switch (algo) {
        case Algo::LZ78: return naive_lz78(s);
        case Algo::FP78: return naive_fp78(s);
        case Algo::FPA78: return naive_fpa78(s);
        case Algo::SemiGreedyLZ77: return naive_sg_lz77(s, s.size());
        case Algo::LZD: return naive_lzd(s);
        case Algo::LZMW: return naive_lzmw(s);
        case Algo::Lexparse: return naive_lexparse(s);
        case Algo::ClosedLongest: return naive_closed_longest(s);
        case Algo::ClosedShortest: return naive_closed_shortest(s);
    }
    throw UnsupportedAlgo("naive_factorize");
}

}  // namespace lzk::oracle
