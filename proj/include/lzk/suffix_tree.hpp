#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "sparse_table.hpp"
#include "text_index.hpp"

namespace lzk {

using NodeId = std::int32_t;  // preorder rank, root = 1, 0 = none

/// Compacted suffix tree over text+sentinel, built from SA/LCP intervals.
/// Leaf-ranks span [1..n+1]; the sentinel leaf has leaf-rank 1 and suffix
/// number n+1, and is skipped in the leaf-rank <-> SA correspondence.
class SuffixTree {
public:
    explicit SuffixTree(const TextIndex& idx) : idx_(&idx) { build(); }

    const TextIndex& index() const { return *idx_; }
    Pos n() const { return idx_->n(); }
    NodeId root() const { return 1; }
    NodeId node_count() const { return static_cast<NodeId>(parent_.size()) - 1; }

    NodeId parent(NodeId v) const { return parent_[static_cast<size_t>(v)]; }
    Len depth(NodeId v) const { return depth_[static_cast<size_t>(v)]; }
    Len string_depth(NodeId v) const { return strdep_[static_cast<size_t>(v)]; }
    Pos range_l(NodeId v) const { return range_l_[static_cast<size_t>(v)]; }
    Pos range_r(NodeId v) const { return range_r_[static_cast<size_t>(v)]; }
    bool is_leaf(NodeId v) const { return suffix_num_[static_cast<size_t>(v)] != 0; }
    Pos suffix_number(NodeId v) const { return suffix_num_[static_cast<size_t>(v)]; }
    /// Largest non-sentinel suffix number in the subtree (0 if none).
    Pos subtree_max(NodeId v) const { return subtree_max_[static_cast<size_t>(v)]; }
    const std::vector<std::pair<std::uint8_t, NodeId>>& children(NodeId v) const { return children_[static_cast<size_t>(v)]; }

    /// Start position of v's string label (suffix number of its first leaf).
    Pos label_start(NodeId v) const { return label_start_[static_cast<size_t>(v)]; }

    /// SA rank interval [lo..hi] of the non-sentinel leaves below v; nullopt
    /// for the sentinel leaf itself.
    std::optional<std::pair<Pos, Pos>> sa_range(NodeId v) const {
        Pos lo = range_l(v), hi = range_r(v);
        if (hi < 2) return std::nullopt;
        return std::make_pair(std::max<Pos>(lo, 2) - 1, hi - 1);
    }

    NodeId select_leaf(Pos suffix) const {
        if (suffix < 1 || suffix > n() + 1) throw BadPosition(suffix);
        return leaf_by_suffix_[static_cast<size_t>(suffix)];
    }

    NodeId child(NodeId v, std::uint8_t c) const {
        const auto& ch = children_[static_cast<size_t>(v)];
        auto it = std::lower_bound(ch.begin(), ch.end(), c,
                                   [](const std::pair<std::uint8_t, NodeId>& p, std::uint8_t x) { return p.first < x; });
        if (it == ch.end() || it->first != c) return 0;
        return it->second;
    }

    /// Ancestor of v at tree depth d.
    NodeId level_anc(NodeId v, Len d) const {
        if (d < 0 || d > depth(v)) throw BadDepth(d);
        Len steps = depth(v) - d;
        for (int k = 0; steps; ++k, steps >>= 1)
            if (steps & 1) v = anc_[static_cast<size_t>(k)][static_cast<size_t>(v)];
        return v;
    }

    /// Shallowest ancestor u of v with string_depth(u) >= d (locus of the
    /// length-d prefix of v's string label).
    NodeId weighted_ancestor(NodeId v, Len d) const {
        if (d < 0 || d > string_depth(v)) throw BadDepth(d);
        for (int k = static_cast<int>(anc_.size()) - 1; k >= 0; --k) {
            NodeId a = anc_[static_cast<size_t>(k)][static_cast<size_t>(v)];
            if (strdep_[static_cast<size_t>(a)] >= d) v = a;
        }
        return v;
    }

    /// Deepest ancestor of leaf(b) whose subtree holds a suffix number > b,
    /// found by binary search over tree depth with subtree-max keys from the
    /// SA range-maximum structure; 0 when no such ancestor exists.
    NodeId deepest_wider_ancestor_binsearch(Pos b) const {
        NodeId leaf = select_leaf(b);
        auto key = [&](NodeId v) -> Pos {
            auto r = sa_range(v);
            return r ? idx_->sa_range_max(r->first, r->second) : 0;
        };
        if (key(root()) <= b) return 0;
        Len lo = 0, hi = depth(leaf);  // key(level_anc(leaf, lo)) > b
        while (lo < hi) {
            Len mid = lo + (hi - lo + 1) / 2;
            if (key(level_anc(leaf, mid)) > b)
                lo = mid;
            else
                hi = mid - 1;
        }
        return level_anc(leaf, lo);
    }

    /// Indented preorder dump for golden comparisons.
    std::string debug_dump() const {
        std::ostringstream os;
        std::vector<NodeId> stack{root()};
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (Len i = 0; i < depth(v); ++i) os << "  ";
            os << v << " d=" << string_depth(v) << " [" << range_l(v) << ".." << range_r(v) << "]";
            if (is_leaf(v)) os << " suffix=" << suffix_number(v);
            os << '\n';
            const auto& ch = children_[static_cast<size_t>(v)];
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(it->second);
        }
        return os.str();
    }

private:
    void build() {
        const Pos n = idx_->n();
        const Pos m = n + 1;  // leaves incl. sentinel
        // extended arrays: sentinel suffix first
        std::vector<Pos> sa_ext(static_cast<size_t>(m) + 1);
        std::vector<Len> lcp_ext(static_cast<size_t>(m) + 1, 0);
        sa_ext[1] = n + 1;
        for (Pos k = 2; k <= m; ++k) sa_ext[static_cast<size_t>(k)] = idx_->sa()[static_cast<size_t>(k - 1)];
        for (Pos k = 3; k <= m; ++k) lcp_ext[static_cast<size_t>(k)] = idx_->lcp()[static_cast<size_t>(k - 1)];
        SparseTable<Len> rmq(lcp_ext);

        auto reserve = [&](size_t cap) {
            parent_.reserve(cap);
            depth_.reserve(cap);
            strdep_.reserve(cap);
            range_l_.reserve(cap);
            range_r_.reserve(cap);
            suffix_num_.reserve(cap);
            label_start_.reserve(cap);
            children_.reserve(cap);
        };
        reserve(2 * static_cast<size_t>(m) + 2);
        auto add_node = [&](NodeId par, Len strdep, Pos lo, Pos hi, Pos suffix) -> NodeId {
            parent_.push_back(par);
            depth_.push_back(par ? depth_[static_cast<size_t>(par)] + 1 : 0);
            strdep_.push_back(strdep);
            range_l_.push_back(lo);
            range_r_.push_back(hi);
            suffix_num_.push_back(suffix);
            label_start_.push_back(sa_ext[static_cast<size_t>(lo)]);
            children_.emplace_back();
            return static_cast<NodeId>(parent_.size()) - 1;
        };
        parent_.assign(1, 0);  // dummy slot 0
        depth_.assign(1, 0);
        strdep_.assign(1, 0);
        range_l_.assign(1, 0);
        range_r_.assign(1, 0);
        suffix_num_.assign(1, 0);
        label_start_.assign(1, 0);
        children_.assign(1, {});

        struct Frame {
            Pos lo, hi;
            NodeId parent;
        };
        std::vector<Frame> work;
        work.push_back({1, m, 0});
        while (!work.empty()) {
            auto [lo, hi, par] = work.back();
            work.pop_back();
            if (lo == hi) {
                Pos s = sa_ext[static_cast<size_t>(lo)];
                add_node(par, n - s + 2, lo, hi, s);
                continue;
            }
            Len d = rmq.value(static_cast<size_t>(lo) + 1, static_cast<size_t>(hi));
            NodeId v = add_node(par, d, lo, hi, 0);
            // children split at every position with lcp == d
            std::vector<Pos> cuts;
            Pos from = lo + 1;
            while (from <= hi) {
                Pos k = static_cast<Pos>(rmq.arg(static_cast<size_t>(from), static_cast<size_t>(hi)));
                if (lcp_ext[static_cast<size_t>(k)] != d) break;
                cuts.push_back(k);
                from = k + 1;
            }
            std::vector<std::pair<Pos, Pos>> kids;
            Pos start = lo;
            for (Pos k : cuts) {
                kids.emplace_back(start, k - 1);
                start = k;
            }
            kids.emplace_back(start, hi);
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) work.push_back({it->first, it->second, v});
        }

        // children edges + leaf map
        leaf_by_suffix_.assign(static_cast<size_t>(n) + 2, 0);
        const NodeId total = node_count();
        for (NodeId v = 1; v <= total; ++v) {
            if (is_leaf(v)) leaf_by_suffix_[static_cast<size_t>(suffix_number(v))] = v;
            NodeId p = parent(v);
            if (p) {
                Pos ls = label_start_[static_cast<size_t>(v)];
                Len pd = strdep_[static_cast<size_t>(p)];
                std::uint8_t c = idx_->text()[ls + pd];
                children_[static_cast<size_t>(p)].emplace_back(c, v);
            }
        }

        // subtree max of non-sentinel suffix numbers
        subtree_max_.assign(static_cast<size_t>(total) + 1, 0);
        for (NodeId v = total; v >= 1; --v) {
            Pos s = suffix_number(v);
            if (s && s <= n) subtree_max_[static_cast<size_t>(v)] = s;
            NodeId p = parent(v);
            if (p) subtree_max_[static_cast<size_t>(p)] = std::max(subtree_max_[static_cast<size_t>(p)], subtree_max_[static_cast<size_t>(v)]);
        }

        // binary lifting; root points to itself
        Len max_depth = 0;
        for (NodeId v = 1; v <= total; ++v) max_depth = std::max(max_depth, depth(v));
        int levels = 1;
        while ((Len{1} << levels) <= max_depth) ++levels;
        anc_.assign(static_cast<size_t>(levels), std::vector<NodeId>(static_cast<size_t>(total) + 1, 1));
        for (NodeId v = 1; v <= total; ++v) anc_[0][static_cast<size_t>(v)] = parent(v) ? parent(v) : 1;
        for (int k = 1; k < levels; ++k)
            for (NodeId v = 1; v <= total; ++v)
                anc_[static_cast<size_t>(k)][static_cast<size_t>(v)] =
                    anc_[static_cast<size_t>(k - 1)][static_cast<size_t>(anc_[static_cast<size_t>(k - 1)][static_cast<size_t>(v)])];
    }

    const TextIndex* idx_;
    std::vector<NodeId> parent_;
    std::vector<Len> depth_, strdep_;
    std::vector<Pos> range_l_, range_r_, suffix_num_, label_start_, subtree_max_;
    std::vector<std::vector<std::pair<std::uint8_t, NodeId>>> children_;
    std::vector<NodeId> leaf_by_suffix_;
    std::vector<std::vector<NodeId>> anc_;
};

inline SuffixTree build_suffix_tree(const TextIndex& idx) { return SuffixTree(idx); }

/// P[i] = shallowest ancestor of leaf(i) whose subtree-max suffix number is i.
inline std::vector<NodeId> compute_p_array(const SuffixTree& st) {
    std::vector<NodeId> p(static_cast<size_t>(st.n()) + 1, 0);
    for (NodeId v = 1; v <= st.node_count(); ++v) {
        Pos m = st.subtree_max(v);
        if (m >= 1 && p[static_cast<size_t>(m)] == 0) p[static_cast<size_t>(m)] = v;
    }
    return p;
}

/// Per-query scratch over an immutable (TextIndex, SuffixTree) pair: marks,
/// exploration counters, reference lists and a position memo, all invalidated
/// in O(1) by bumping the epoch.
class QueryHandle {
public:
    explicit QueryHandle(const SuffixTree& st)
        : st_(&st),
          mark_epoch_(static_cast<size_t>(st.node_count()) + 1, 0),
          counter_(static_cast<size_t>(st.node_count()) + 1, 0),
          refs_epoch_(static_cast<size_t>(st.node_count()) + 1, 0),
          refs_(static_cast<size_t>(st.node_count()) + 1),
          memo_epoch_(static_cast<size_t>(st.n()) + 2, 0),
          memo_(static_cast<size_t>(st.n()) + 2) {}

    const SuffixTree& tree() const { return *st_; }
    const TextIndex& index() const { return st_->index(); }

    void new_epoch() {
        ++epoch_;
        marked_ancestor_calls_ = 0;
        node_visits_ = 0;
    }

    struct Ref {
        Len len = 0;
        std::int32_t id = 0;
    };
    struct Hit {
        NodeId node = 0;
        std::int32_t ref = 0;
        Len len = 0;
    };

    bool marked(NodeId v) const { return mark_epoch_[static_cast<size_t>(v)] == epoch_; }
    Len exploration_counter(NodeId v) const { return marked(v) ? counter_[static_cast<size_t>(v)] : 0; }
    std::vector<Ref> refs_at(NodeId v) const {
        return refs_epoch_[static_cast<size_t>(v)] == epoch_ ? refs_[static_cast<size_t>(v)] : std::vector<Ref>{};
    }

    /// Record a reference of the given length ending at its locus v. A length
    /// seen before this epoch at v keeps its original id.
    void mark(NodeId v, std::int32_t ref_id, Len len) {
        Len lo = st_->string_depth(st_->parent(v)), hi = st_->string_depth(v);
        if (v == st_->root()) {
            if (len != 0) throw Error("root mark must have length 0");
            return;
        }
        if (len <= lo || len > hi) throw Error("mark length outside edge");
        auto& rs = refs_[static_cast<size_t>(v)];
        if (refs_epoch_[static_cast<size_t>(v)] != epoch_) {
            rs.clear();
            refs_epoch_[static_cast<size_t>(v)] = epoch_;
        }
        auto it = std::lower_bound(rs.begin(), rs.end(), len, [](const Ref& r, Len l) { return r.len < l; });
        if (it != rs.end() && it->len == len) return;  // first id wins
        rs.insert(it, Ref{len, ref_id});
        if (mark_epoch_[static_cast<size_t>(v)] != epoch_) {
            mark_epoch_[static_cast<size_t>(v)] = epoch_;
            counter_[static_cast<size_t>(v)] = 0;
        }
        ++counter_[static_cast<size_t>(v)];
        if (counter_[static_cast<size_t>(v)] > hi - lo) throw Error("exploration counter exceeds edge length");
    }

    /// Deepest recorded reference on the path from leaf to root whose length
    /// is <= cap and satisfies admissible(id); the root counts as (0, 0).
    template <typename Pred>
    Hit lowest_marked_ancestor_where(NodeId leaf, Len cap, Pred admissible) {
        ++marked_ancestor_calls_;
        NodeId v = leaf;
        while (v != st_->root()) {
            ++node_visits_;
            if (marked(v)) {
                const auto& rs = refs_[static_cast<size_t>(v)];
                auto it = std::upper_bound(rs.begin(), rs.end(), cap, [](Len c, const Ref& r) { return c < r.len; });
                while (it != rs.begin()) {
                    --it;
                    if (admissible(it->id)) return Hit{v, it->id, it->len};
                }
            }
            v = st_->parent(v);
        }
        return Hit{st_->root(), 0, 0};
    }

    Hit lowest_marked_ancestor(NodeId leaf, Len cap = std::numeric_limits<Len>::max()) {
        return lowest_marked_ancestor_where(leaf, cap, [](std::int32_t) { return true; });
    }

    /// Reference of exactly the given length on the path above leaf, if one
    /// was marked this epoch.
    std::optional<std::int32_t> try_ref_of_length(NodeId leaf, Len len) const {
        if (len == 0) return 0;
        if (len > st_->string_depth(leaf)) return std::nullopt;
        NodeId v = st_->weighted_ancestor(leaf, len);
        const auto& rs = refs_[static_cast<size_t>(v)];
        if (refs_epoch_[static_cast<size_t>(v)] == epoch_) {
            auto it = std::lower_bound(rs.begin(), rs.end(), len, [](const Ref& r, Len l) { return r.len < l; });
            if (it != rs.end() && it->len == len) return it->id;
        }
        return std::nullopt;
    }

    /// As above, but the length must have been marked (prefix-closed
    /// dictionaries).
    std::int32_t ref_of_length(NodeId leaf, Len len) const {
        if (auto r = try_ref_of_length(leaf, len)) return *r;
        throw Error("no reference of length " + std::to_string(len) + " on path");
    }

    // per-position memo: (match length, reference id)
    bool memo_get(Pos p, Len& len, std::int32_t& id) const {
        if (memo_epoch_[static_cast<size_t>(p)] != epoch_) return false;
        len = memo_[static_cast<size_t>(p)].len;
        id = memo_[static_cast<size_t>(p)].id;
        return true;
    }
    void memo_put(Pos p, Len len, std::int32_t id) {
        memo_epoch_[static_cast<size_t>(p)] = epoch_;
        memo_[static_cast<size_t>(p)] = Ref{len, id};
    }

    std::int64_t marked_ancestor_calls() const { return marked_ancestor_calls_; }
    std::int64_t node_visits() const { return node_visits_; }

private:
    const SuffixTree* st_;
    std::uint32_t epoch_ = 1;
    std::vector<std::uint32_t> mark_epoch_;
    std::vector<Len> counter_;
    std::vector<std::uint32_t> refs_epoch_;
    std::vector<std::vector<Ref>> refs_;
    std::vector<std::uint32_t> memo_epoch_;
    std::vector<Ref> memo_;
    std::int64_t marked_ancestor_calls_ = 0, node_visits_ = 0;
};

}  // namespace lzk
