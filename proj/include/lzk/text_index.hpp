#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "sparse_table.hpp"
#include "wavelet_tree.hpp"

namespace lzk {

/// Lexicographic order of the suffixes of T[I] (truncated at e(I)), with a
/// proper prefix sorting before its extensions. Built per query interval.
class SubstringSuffixOrder {
public:
    SubstringSuffixOrder(Interval I, std::vector<Pos> sorted_starts) : interval_(I), order_(std::move(sorted_starts)) {
        rank_.assign(order_.size(), 0);
        for (size_t k = 0; k < order_.size(); ++k) rank_[static_cast<size_t>(order_[k] - interval_.begin)] = static_cast<Len>(k + 1);
    }
    Interval interval() const { return interval_; }
    Len rank(Pos j) const {
        if (!interval_.contains(j)) throw BadPosition(j);
        return rank_[static_cast<size_t>(j - interval_.begin)];
    }
    Pos select(Len k) const {
        if (k < 1 || k > static_cast<Len>(order_.size())) throw BadRank(k);
        return order_[static_cast<size_t>(k - 1)];
    }

private:
    Interval interval_;
    std::vector<Pos> order_;
    std::vector<Len> rank_;
};

/// Immutable bundle of suffix-array-based structures over one text.
/// All arrays are 1-based; index 0 is a dummy slot.
class TextIndex {
public:
    explicit TextIndex(Text text) : text_(std::move(text)) {
        const Pos n = text_.size();
        build_sa();
        isa_.assign(static_cast<size_t>(n) + 1, 0);
        for (Pos r = 1; r <= n; ++r) isa_[static_cast<size_t>(sa_[static_cast<size_t>(r)])] = r;
        phi_.assign(static_cast<size_t>(n) + 1, 0);
        for (Pos i = 1; i <= n; ++i) phi_[static_cast<size_t>(i)] = isa_[static_cast<size_t>(i)] > 1 ? sa_[static_cast<size_t>(isa_[static_cast<size_t>(i)] - 1)] : n + 1;
        build_plcp();
        lcp_.assign(static_cast<size_t>(n) + 1, 0);
        for (Pos r = 1; r <= n; ++r) lcp_[static_cast<size_t>(r)] = plcp_[static_cast<size_t>(sa_[static_cast<size_t>(r)])];
        lcp_rmq_ = SparseTable<Len>(lcp_);
        sa_max_ = SparseTable<Pos, true>(sa_);
        sa_rsucc_ = WaveletTree(std::vector<std::int32_t>(sa_.begin() + 1, sa_.end()));
        for (Pos i = 1; i <= n; ++i) occ_[text_[i]].push_back(i);
    }

    const Text& text() const { return text_; }
    Pos n() const { return text_.size(); }

    const std::vector<Pos>& sa() const { return sa_; }
    const std::vector<Pos>& isa() const { return isa_; }
    const std::vector<Pos>& phi() const { return phi_; }
    const std::vector<Len>& lcp() const { return lcp_; }
    const std::vector<Len>& plcp() const { return plcp_; }
    const SparseTable<Len>& lcp_rmq() const { return lcp_rmq_; }

    /// Largest suffix start among sa[lo..hi].
    Pos sa_range_max(Pos lo, Pos hi) const { return sa_max_.value(static_cast<size_t>(lo), static_cast<size_t>(hi)); }

    Len lce(Pos i, Pos j) const {
        check_pos(i);
        check_pos(j);
        if (i == j) return n() - i + 1;
        Pos ri = isa_[static_cast<size_t>(i)], rj = isa_[static_cast<size_t>(j)];
        if (ri > rj) std::swap(ri, rj);
        return lcp_rmq_.value(static_cast<size_t>(ri) + 1, static_cast<size_t>(rj));
    }

    /// min{ sa[k] : lo <= k <= hi, sa[k] > x }
    std::optional<Pos> range_next_value(Pos x, Pos lo, Pos hi) const {
        if (lo < 1 || hi > n() || lo > hi) throw BadRange(lo, hi);
        return sa_rsucc_.successor(x, static_cast<size_t>(lo) - 1, static_cast<size_t>(hi));
    }

    /// Smallest q > p with T[q] = c.
    std::optional<Pos> next_char_occurrence(std::uint8_t c, Pos p) const {
        check_pos(p);
        const auto& v = occ_[c];
        auto it = std::upper_bound(v.begin(), v.end(), p);
        if (it == v.end()) return std::nullopt;
        return *it;
    }

    const std::vector<Pos>& occurrences(std::uint8_t c) const { return occ_[c]; }

    /// Longest-previous-factor table; sources[j] holds a position i < j
    /// realizing LPF[j] (0 when LPF[j] = 0).
    void lpf(std::vector<Len>& lpf_out, std::vector<Pos>& sources) const {
        const Pos n = this->n();
        lpf_out.assign(static_cast<size_t>(n) + 1, 0);
        sources.assign(static_cast<size_t>(n) + 1, 0);
        std::vector<Pos> psv(static_cast<size_t>(n) + 1, 0), nsv(static_cast<size_t>(n) + 1, 0);
        std::vector<Pos> stack;
        for (Pos r = 1; r <= n; ++r) {
            while (!stack.empty() && sa_[static_cast<size_t>(stack.back())] > sa_[static_cast<size_t>(r)]) stack.pop_back();
            psv[static_cast<size_t>(r)] = stack.empty() ? 0 : stack.back();
            stack.push_back(r);
        }
        stack.clear();
        for (Pos r = n; r >= 1; --r) {
            while (!stack.empty() && sa_[static_cast<size_t>(stack.back())] > sa_[static_cast<size_t>(r)]) stack.pop_back();
            nsv[static_cast<size_t>(r)] = stack.empty() ? 0 : stack.back();
            stack.push_back(r);
        }
        for (Pos r = 1; r <= n; ++r) {
            const Pos j = sa_[static_cast<size_t>(r)];
            Len lp = 0, ln = 0;
            if (psv[static_cast<size_t>(r)]) lp = lcp_rmq_.value(static_cast<size_t>(psv[static_cast<size_t>(r)]) + 1, static_cast<size_t>(r));
            if (nsv[static_cast<size_t>(r)]) ln = lcp_rmq_.value(static_cast<size_t>(r) + 1, static_cast<size_t>(nsv[static_cast<size_t>(r)]));
            if (lp >= ln) {
                lpf_out[static_cast<size_t>(j)] = lp;
                sources[static_cast<size_t>(j)] = lp > 0 ? sa_[static_cast<size_t>(psv[static_cast<size_t>(r)])] : 0;
            } else {
                lpf_out[static_cast<size_t>(j)] = ln;
                sources[static_cast<size_t>(j)] = sa_[static_cast<size_t>(nsv[static_cast<size_t>(r)])];
            }
        }
    }

    std::vector<Len> lpf() const {
        std::vector<Len> l;
        std::vector<Pos> s;
        lpf(l, s);
        return l;
    }

    SubstringSuffixOrder suffix_order(Interval I) const {
        check_interval(I);
        std::vector<Pos> starts(static_cast<size_t>(I.size()));
        std::iota(starts.begin(), starts.end(), I.begin);
        const Pos e = I.end;
        std::sort(starts.begin(), starts.end(), [&](Pos p, Pos q) {
            if (p == q) return false;
            Len l = lce(p, q);
            Len lp = e - p + 1, lq = e - q + 1;
            if (l >= lp || l >= lq) return lp < lq;  // prefix sorts before extension
            return isa_[static_cast<size_t>(p)] < isa_[static_cast<size_t>(q)];
        });
        return SubstringSuffixOrder(I, std::move(starts));
    }

    Len substring_suffix_rank(Interval I, Pos j) const { return suffix_order(I).rank(j); }
    Pos substring_suffix_select(Interval I, Len k) const { return suffix_order(I).select(k); }

    void check_interval(Interval I) const {
        if (I.begin < 1 || I.end > n() || I.begin > I.end) throw BadRange(I.begin, I.end);
    }

    /// Tab-separated arrays, one per line, for golden tests.
    std::string debug_dump() const {
        std::ostringstream os;
        auto line = [&os](const char* name, const auto& v) {
            os << name;
            for (size_t i = 1; i < v.size(); ++i) os << '\t' << v[i];
            os << '\n';
        };
        line("sa", sa_);
        line("isa", isa_);
        line("lcp", lcp_);
        line("plcp", plcp_);
        line("phi", phi_);
        return os.str();
    }

private:
    void check_pos(Pos p) const {
        if (p < 1 || p > n()) throw BadPosition(p);
    }

    // Suffix-array construction by prefix doubling with counting sort.
    void build_sa() {
        const Pos n = text_.size();
        const size_t un = static_cast<size_t>(n);
        std::vector<Pos> sa(un), rank(un), tmp(un), cnt;
        for (size_t i = 0; i < un; ++i) {
            sa[i] = static_cast<Pos>(i);
            rank[i] = text_[static_cast<Pos>(i) + 1];
        }
        auto counting_sort = [&](auto key, Pos key_max) {
            cnt.assign(static_cast<size_t>(key_max) + 2, 0);
            for (size_t i = 0; i < un; ++i) cnt[static_cast<size_t>(key(sa[i])) + 1]++;
            for (size_t k = 1; k < cnt.size(); ++k) cnt[k] += cnt[k - 1];
            for (size_t i = 0; i < un; ++i) tmp[static_cast<size_t>(cnt[static_cast<size_t>(key(sa[i]))]++)] = sa[i];
            sa.swap(tmp);
        };
        Pos max_rank = 255;
        for (Pos k = 1;; k <<= 1) {
            auto key2 = [&](Pos i) { return i + k < n ? rank[static_cast<size_t>(i + k)] : 0; };
            auto key1 = [&](Pos i) { return rank[static_cast<size_t>(i)]; };
            counting_sort(key2, max_rank);
            counting_sort(key1, max_rank);
            tmp[static_cast<size_t>(sa[0])] = 1;
            for (size_t r = 1; r < un; ++r) {
                bool same = key1(sa[r]) == key1(sa[r - 1]) && key2(sa[r]) == key2(sa[r - 1]);
                tmp[static_cast<size_t>(sa[r])] = tmp[static_cast<size_t>(sa[r - 1])] + (same ? 0 : 1);
            }
            rank.swap(tmp);
            max_rank = rank[static_cast<size_t>(sa[un - 1])];
            if (max_rank == n) break;
        }
        sa_.assign(un + 1, 0);
        for (size_t r = 0; r < un; ++r) sa_[r + 1] = sa[r] + 1;
    }

    // PLCP by the Phi scan: amortized linear, decrementing the running match.
    void build_plcp() {
        const Pos n = text_.size();
        plcp_.assign(static_cast<size_t>(n) + 1, 0);
        Len l = 0;
        for (Pos i = 1; i <= n; ++i) {
            const Pos j = phi_[static_cast<size_t>(i)];
            if (j == n + 1) {
                plcp_[static_cast<size_t>(i)] = 0;
                l = 0;
                continue;
            }
            while (i + l <= n && j + l <= n && text_[i + l] == text_[j + l]) ++l;
            plcp_[static_cast<size_t>(i)] = l;
            if (l > 0) --l;
        }
    }

    Text text_;
    std::vector<Pos> sa_, isa_, phi_;
    std::vector<Len> lcp_, plcp_;
    SparseTable<Len> lcp_rmq_;
    SparseTable<Pos, true> sa_max_;
    WaveletTree sa_rsucc_;
    std::array<std::vector<Pos>, 256> occ_;
};

inline TextIndex build_text_index(Text text) { return TextIndex(std::move(text)); }

}  // namespace lzk
