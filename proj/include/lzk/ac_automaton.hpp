#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "core.hpp"

namespace lzk {

/// Aho-Corasick automaton over the LZ78 dictionary of a text: the LZ trie
/// plus suffix links, with every state annotated by the ending position of
/// the factor it represents.
class ACAutomaton {
public:
    ACAutomaton(const Factorization& lz78, const Text& t) : n_(t.size()) {
        if (lz78.algo != Algo::LZ78) throw UnsupportedAlgo("build_ac expects an LZ78 factorization");
        add_root();
        std::vector<std::int32_t> state_of(lz78.factors.size() + 1, 0);
        for (size_t i = 0; i < lz78.factors.size(); ++i) {
            const Factor& f = lz78.factors[i];
            const auto x = static_cast<std::int32_t>(i) + 1;
            if (!f.has_symbol) {
                state_of[static_cast<size_t>(x)] = state_of[static_cast<size_t>(f.ref)];
                continue;  // trimmed final factor: an existing dictionary string
            }
            const std::int32_t p = state_of[static_cast<size_t>(f.ref)];
            std::int32_t v = add_state(p, f.symbol, x, f.pos, f.pos + f.len - 1);
            state_of[static_cast<size_t>(x)] = v;
            if (end_[static_cast<size_t>(v)] <= end_[static_cast<size_t>(p)])
                throw Error("factor end positions must grow along trie paths");
        }
        // suffix links in creation order (parents precede children)
        for (std::int32_t v = 1; v < size(); ++v) {
            const std::int32_t p = parent_[static_cast<size_t>(v)];
            const std::uint8_t c = in_char_[static_cast<size_t>(v)];
            if (p == 0) {
                slink_[static_cast<size_t>(v)] = 0;
                continue;
            }
            std::int32_t u = slink_[static_cast<size_t>(p)];
            std::int32_t s = 0;
            while (true) {
                std::int32_t w = child(u, c);
                if (w != 0 && w != v) {
                    s = w;
                    break;
                }
                if (u == 0) break;
                u = slink_[static_cast<size_t>(u)];
            }
            slink_[static_cast<size_t>(v)] = s;
        }
    }

    Pos text_length() const { return n_; }
    std::int32_t size() const { return static_cast<std::int32_t>(parent_.size()); }
    std::int32_t parent(std::int32_t v) const { return parent_[static_cast<size_t>(v)]; }
    Len depth(std::int32_t v) const { return depth_[static_cast<size_t>(v)]; }
    Pos end(std::int32_t v) const { return end_[static_cast<size_t>(v)]; }
    Pos occurrence(std::int32_t v) const { return occ_[static_cast<size_t>(v)]; }
    std::int32_t factor_id(std::int32_t v) const { return factor_[static_cast<size_t>(v)]; }
    std::int32_t suffix_link(std::int32_t v) const { return slink_[static_cast<size_t>(v)]; }
    std::uint8_t in_char(std::int32_t v) const { return in_char_[static_cast<size_t>(v)]; }

    std::int32_t child(std::int32_t v, std::uint8_t c) const {
        const auto& g = goto_[static_cast<size_t>(v)];
        auto it = std::lower_bound(g.begin(), g.end(), c,
                                   [](const std::pair<std::uint8_t, std::int32_t>& e, std::uint8_t x) { return e.first < x; });
        return (it != g.end() && it->first == c) ? it->second : 0;
    }

private:
    void add_root() {
        parent_.push_back(0);
        depth_.push_back(0);
        end_.push_back(0);
        occ_.push_back(0);
        factor_.push_back(0);
        slink_.push_back(0);
        in_char_.push_back(0);
        goto_.emplace_back();
    }
    std::int32_t add_state(std::int32_t par, std::uint8_t c, std::int32_t fid, Pos occ, Pos end) {
        const auto v = static_cast<std::int32_t>(parent_.size());
        parent_.push_back(par);
        depth_.push_back(depth_[static_cast<size_t>(par)] + 1);
        end_.push_back(end);
        occ_.push_back(occ);
        factor_.push_back(fid);
        slink_.push_back(0);
        in_char_.push_back(c);
        goto_.emplace_back();
        auto& g = goto_[static_cast<size_t>(par)];
        auto it = std::lower_bound(g.begin(), g.end(), c,
                                   [](const std::pair<std::uint8_t, std::int32_t>& e, std::uint8_t x) { return e.first < x; });
        if (it != g.end() && it->first == c) throw Error("duplicate trie edge");
        g.insert(it, {c, v});
        return v;
    }

    Pos n_;
    std::vector<std::int32_t> parent_, factor_, slink_;
    std::vector<Len> depth_;
    std::vector<Pos> end_, occ_;
    std::vector<std::uint8_t> in_char_;
    std::vector<std::vector<std::pair<std::uint8_t, std::int32_t>>> goto_;
};

inline ACAutomaton build_ac(const Factorization& lz78, const Text& t) { return ACAutomaton(lz78, t); }

struct ACScanStats {
    std::int64_t goto_steps = 0;
    std::int64_t slink_steps = 0;
    std::int64_t memo_writes = 0;
};

/// FP78 by scanning with the automaton: the match window shrinks via suffix
/// links and grows via goto edges; states whose factor ends at or after the
/// queried position are pruned. Produces the same factor sequence as the
/// suffix-tree backend.
inline Factorization fp78_factorize_ac(const ACAutomaton& ac, const Text& t, ACScanStats* stats = nullptr) {
    const Pos n = t.size();
    if (ac.text_length() != n) throw InconsistentAutomaton("text length differs from automaton");
    for (std::int32_t v = 1; v < ac.size(); ++v) {
        if (ac.end(v) != ac.occurrence(v) + ac.depth(v) - 1 || t[ac.end(v)] != ac.in_char(v))
            throw InconsistentAutomaton("automaton state disagrees with text");
    }

    ACScanStats local;
    ACScanStats& st = stats ? *stats : local;
    std::vector<Len> memo_m(static_cast<size_t>(n) + 2, -1);
    std::vector<std::int32_t> memo_state(static_cast<size_t>(n) + 2, 0);

    // sliding window [wstart..wend]: state spells T[wstart..wend]
    Pos wstart = 1, wend = 0;
    std::int32_t state = 0;

    auto put = [&](Pos p, Len m, std::int32_t s) {
        if (memo_m[static_cast<size_t>(p)] >= 0) return;
        memo_m[static_cast<size_t>(p)] = m;
        memo_state[static_cast<size_t>(p)] = s;
        ++st.memo_writes;
    };
    // longest admissible match at p, computed from the root; does not move
    // the window
    auto root_descent = [&](Pos p) {
        std::int32_t v = 0;
        while (p + ac.depth(v) <= n) {
            ++st.goto_steps;
            std::int32_t c = ac.child(v, t[p + ac.depth(v)]);
            if (c == 0 || ac.end(c) >= p) break;
            v = c;
        }
        put(p, ac.depth(v), v);
    };
    // window parked at wstart: cut the inadmissible tail for the match value,
    // extend to the right when fully admissible
    auto visit = [&]() {
        std::int32_t cut = state;
        while (cut != 0 && ac.end(cut) >= wstart) cut = ac.parent(cut);
        if (cut == state) {
            while (wend + 1 <= n) {
                ++st.goto_steps;
                std::int32_t c = ac.child(state, t[wend + 1]);
                if (c == 0 || ac.end(c) >= wstart) break;
                state = c;
                ++wend;
            }
            put(wstart, ac.depth(state), state);
        } else {
            put(wstart, ac.depth(cut), cut);
        }
    };
    auto step = [&]() {
        if (state == 0) {
            ++wstart;
            wend = wstart - 1;
        } else {
            state = ac.suffix_link(state);
            ++st.slink_steps;
            wstart = wend - ac.depth(state) + 1;
        }
        visit();
    };

    visit();  // position 1

    Factorization out;
    out.algo = Algo::FP78;
    out.interval = {1, n};
    auto state_at_depth = [&](std::int32_t s, Len d) {
        while (ac.depth(s) > d) s = ac.parent(s);
        return s;
    };
    Pos dst = 1;
    while (dst <= n) {
        while (wstart < dst) step();
        if (memo_m[static_cast<size_t>(dst)] < 0) root_descent(dst);
        const Len m = memo_m[static_cast<size_t>(dst)];
        const std::int32_t mstate = memo_state[static_cast<size_t>(dst)];
        const Len rem = n - dst + 1;
        const Len l0 = std::min<Len>(m + 1, rem);
        while (wstart < dst + l0 && wstart <= n) step();
        Len best_l = 0, best_v = -1;
        for (Len l1 = 1; l1 <= l0; ++l1) {
            const Pos p = dst + l1;
            Len adv = 0;
            if (p <= n) {
                // window extensions can re-base wend and orphan chain
                // positions of the previous window; recover those on demand
                if (memo_m[static_cast<size_t>(p)] < 0) root_descent(p);
                adv = std::min<Len>(memo_m[static_cast<size_t>(p)] + 1, n - p + 1);
            }
            if (l1 + adv >= best_v) {
                best_v = l1 + adv;
                best_l = l1;
            }
        }
        if (best_l == 1) {
            if (dst == n && m >= 1)
                out.factors.push_back(Factor::make_ref78(dst, ac.factor_id(state_at_depth(mstate, 1)), 1, false, 0));
            else
                out.factors.push_back(Factor::make_ref78(dst, 0, 0, true, t[dst]));
        } else if (dst + best_l - 1 == n && best_l <= m) {
            out.factors.push_back(Factor::make_ref78(dst, ac.factor_id(state_at_depth(mstate, best_l)), best_l, false, 0));
        } else {
            out.factors.push_back(
                Factor::make_ref78(dst, ac.factor_id(state_at_depth(mstate, best_l - 1)), best_l - 1, true, t[dst + best_l - 1]));
        }
        dst += best_l;
    }
    return out;
}

}  // namespace lzk
