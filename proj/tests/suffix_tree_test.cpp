#include "lzk/suffix_tree.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "test_util.hpp"

using namespace lzk;

namespace {

const char* kRunning = "ababbababbabb";

TEST(SuffixTree, RunningExampleShape) {
    TextIndex idx(Text{kRunning});
    SuffixTree st(idx);
    EXPECT_EQ(st.n(), 13);
    // n+1 leaves, sentinel leaf has leaf-rank 1
    int leaves = 0;
    for (NodeId v = 1; v <= st.node_count(); ++v) leaves += st.is_leaf(v);
    EXPECT_EQ(leaves, 14);
    NodeId sentinel = st.select_leaf(14);
    EXPECT_EQ(st.range_l(sentinel), 1);
    EXPECT_EQ(st.range_r(sentinel), 1);
    // leaf-rank order (skipping sentinel) spells the suffix array
    std::map<Pos, Pos> by_rank;
    for (NodeId v = 1; v <= st.node_count(); ++v)
        if (st.is_leaf(v)) by_rank[st.range_l(v)] = st.suffix_number(v);
    for (Pos r = 2; r <= 14; ++r) EXPECT_EQ(by_rank[r], idx.sa()[static_cast<size_t>(r - 1)]);

    // the parent of leaf 1 is the node with preorder rank 4 and string
    // depth 7 (label ababbab)
    NodeId leaf1 = st.select_leaf(1);
    EXPECT_EQ(st.parent(leaf1), 4);
    EXPECT_EQ(st.string_depth(4), 7);
}

TEST(SuffixTree, SingleSymbolTree) {
    TextIndex idx(Text{"a"});
    SuffixTree st(idx);
    EXPECT_EQ(st.node_count(), 3);  // root + sentinel leaf + suffix-1 leaf
    EXPECT_EQ(st.children(st.root()).size(), 2u);
    EXPECT_EQ(st.suffix_number(st.select_leaf(1)), 1);
    EXPECT_EQ(st.suffix_number(st.select_leaf(2)), 2);
}

// Right-extensible repeats of T: substrings (incl. empty) followed by at
// least two distinct symbols over their occurrences, counting the sentinel.
std::set<std::string> brute_internal_labels(const Text& t) {
    std::set<std::string> out;
    const Pos n = t.size();
    for (Pos i = 1; i <= n + 1; ++i)
        for (Pos j = i - 1; j <= n; ++j) {  // substring T[i..j], empty when j < i
            std::set<std::uint8_t> next;
            Len len = j - i + 1;
            for (Pos p = 1; p + len - 1 <= n; ++p) {
                bool match = true;
                for (Len k = 0; k < len; ++k)
                    if (t[p + k] != t[i + k]) {
                        match = false;
                        break;
                    }
                if (match) next.insert(t[p + len]);  // sentinel at n+1
            }
            if (next.size() >= 2) out.insert(t.str().substr(static_cast<size_t>(i - 1), static_cast<size_t>(len)));
        }
    return out;
}

TEST(SuffixTree, InternalLabelsAreRightExtensibleRepeats) {
    std::mt19937 rng(5);
    for (int it = 0; it < 40; ++it) {
        Text t = test::random_text(rng, 64, 2 + it % 3);
        TextIndex idx(t);
        SuffixTree st(idx);
        std::set<std::string> labels;
        for (NodeId v = 1; v <= st.node_count(); ++v)
            if (!st.is_leaf(v))
                labels.insert(t.str().substr(static_cast<size_t>(st.label_start(v)) - 1, static_cast<size_t>(st.string_depth(v))));
        ASSERT_EQ(labels, brute_internal_labels(t)) << t.str();
    }
}

TEST(SuffixTree, StringDepthEqualsMinLcpOverRange) {
    std::mt19937 rng(6);
    for (int it = 0; it < 30; ++it) {
        Text t = test::random_text(rng, 256, 2);
        TextIndex idx(t);
        SuffixTree st(idx);
        // extended lcp: rank 1 = sentinel, lcp_ext[2] = 0, lcp_ext[k] = lcp[k-1]
        auto lcp_ext = [&](Pos k) -> Len { return k <= 2 ? 0 : idx.lcp()[static_cast<size_t>(k - 1)]; };
        for (NodeId v = 1; v <= st.node_count(); ++v) {
            if (st.is_leaf(v)) continue;
            Len mn = std::numeric_limits<Len>::max();
            for (Pos k = st.range_l(v) + 1; k <= st.range_r(v); ++k) mn = std::min(mn, lcp_ext(k));
            ASSERT_EQ(st.string_depth(v), mn);
            if (v != st.root()) {
                ASSERT_LT(st.string_depth(st.parent(v)), st.string_depth(v));
            }
        }
    }
}

TEST(SuffixTree, Navigation) {
    TextIndex idx(Text{kRunning});
    SuffixTree st(idx);
    NodeId leaf = st.select_leaf(1);
    EXPECT_EQ(st.level_anc(leaf, st.depth(leaf)), leaf);
    EXPECT_EQ(st.level_anc(leaf, 0), st.root());
    EXPECT_GE(st.string_depth(st.parent(st.select_leaf(1))), 7);
    EXPECT_EQ(st.child(st.root(), 'z'), 0);
    NodeId a_child = st.child(st.root(), 'a');
    ASSERT_NE(a_child, 0);
    EXPECT_EQ(st.string_depth(a_child), 2);  // every 'a' is followed by 'b'
    EXPECT_THROW(st.level_anc(leaf, -1), BadDepth);
}

TEST(SuffixTree, WeightedAncestorMatchesLinearWalk) {
    std::mt19937 rng(8);
    for (int it = 0; it < 40; ++it) {
        Text t = test::random_text(rng, 128, 2 + it % 2);
        TextIndex idx(t);
        SuffixTree st(idx);
        for (Pos i = 1; i <= t.size(); ++i) {
            NodeId leaf = st.select_leaf(i);
            for (Len d = 0; d <= st.string_depth(leaf); ++d) {
                NodeId u = st.weighted_ancestor(leaf, d);
                // linear walk: shallowest ancestor with string depth >= d
                NodeId expect = leaf;
                for (NodeId v = leaf; v != 0; v = st.parent(v))
                    if (st.string_depth(v) >= d) expect = v;
                ASSERT_EQ(u, expect);
                if (d > 0) {
                    ASSERT_LT(st.string_depth(st.parent(u)), d);
                }
            }
        }
    }
    TextIndex idx(Text{kRunning});
    SuffixTree st(idx);
    EXPECT_EQ(st.weighted_ancestor(st.select_leaf(3), 0), st.root());
    NodeId lf = st.select_leaf(3);
    EXPECT_EQ(st.weighted_ancestor(lf, st.string_depth(lf)), lf);
}

TEST(SuffixTree, PArray) {
    TextIndex idx(Text{kRunning});
    SuffixTree st(idx);
    auto p = compute_p_array(st);
    EXPECT_EQ(p[1], st.select_leaf(1));  // no later suffix shares a prefix of T[1..]
    std::mt19937 rng(9);
    for (int it = 0; it < 40; ++it) {
        Text t = test::random_text(rng, 64, 2 + it % 3);
        TextIndex ix(t);
        SuffixTree s(ix);
        auto pa = compute_p_array(s);
        for (Pos i = 1; i <= t.size(); ++i) {
            // brute force: shallowest ancestor with subtree max == i
            NodeId expect = 0;
            for (NodeId v = s.select_leaf(i); v != 0; v = s.parent(v))
                if (s.subtree_max(v) == i) expect = v;
            ASSERT_EQ(pa[static_cast<size_t>(i)], expect) << t.str();
            // the two u-finding modes agree: parent(P[i]) vs binary search
            NodeId u1 = s.parent(pa[static_cast<size_t>(i)]);
            NodeId u2 = s.deepest_wider_ancestor_binsearch(i);
            ASSERT_EQ(u1, u2) << t.str() << " i=" << i;
        }
    }
}

TEST(QueryHandleTest, MarksAndEpochs) {
    TextIndex idx(Text{kRunning});
    SuffixTree st(idx);
    QueryHandle h(st);
    h.new_epoch();

    auto hit = h.lowest_marked_ancestor(st.select_leaf(5));
    EXPECT_EQ(hit.node, st.root());
    EXPECT_EQ(hit.ref, 0);
    EXPECT_EQ(hit.len, 0);

    // mark the locus of "ab" as LZ78 factor 3; leaf 3 starts with "ab"
    NodeId locus = st.weighted_ancestor(st.select_leaf(1), 2);
    h.mark(locus, 3, 2);
    auto q = h.lowest_marked_ancestor(st.select_leaf(3));
    EXPECT_EQ(q.len, 2);
    EXPECT_EQ(q.ref, 3);
    EXPECT_EQ(h.exploration_counter(locus), 1);

    // duplicate length keeps the first id and the counter
    h.mark(locus, 9, 2);
    EXPECT_EQ(h.exploration_counter(locus), 1);
    EXPECT_EQ(h.lowest_marked_ancestor(st.select_leaf(3)).ref, 3);

    // capped query walks past too-deep references
    auto capped = h.lowest_marked_ancestor(st.select_leaf(3), 1);
    EXPECT_EQ(capped.node, st.root());

    // epoch bump unmarks everything observably
    h.new_epoch();
    EXPECT_EQ(h.lowest_marked_ancestor(st.select_leaf(3)).node, st.root());
    EXPECT_EQ(h.exploration_counter(locus), 0);
}

TEST(QueryHandleTest, LowestMarkedMatchesBruteWalk) {
    std::mt19937 rng(11);
    for (int it = 0; it < 30; ++it) {
        Text t = test::random_text(rng, 96, 2);
        TextIndex idx(t);
        SuffixTree st(idx);
        QueryHandle h(st);
        h.new_epoch();
        // mark random loci with plausible lengths
        std::uniform_int_distribution<Pos> pd(1, t.size());
        std::vector<std::pair<NodeId, Len>> marks;
        for (int m = 0; m < 10; ++m) {
            Pos p = pd(rng);
            NodeId leaf = st.select_leaf(p);
            std::uniform_int_distribution<Len> dd(1, st.string_depth(leaf));
            Len d = dd(rng);
            NodeId v = st.weighted_ancestor(leaf, d);
            h.mark(v, m + 1, d);
            marks.emplace_back(v, d);
        }
        for (Pos p = 1; p <= t.size(); ++p) {
            NodeId leaf = st.select_leaf(p);
            auto hit = h.lowest_marked_ancestor(leaf);
            // brute walk
            NodeId expect = st.root();
            Len elen = 0;
            for (NodeId v = leaf; v != st.root(); v = st.parent(v)) {
                if (h.marked(v)) {
                    expect = v;
                    for (auto& [mv, md] : marks)
                        if (mv == v) elen = std::max(elen, md);
                    break;
                }
            }
            ASSERT_EQ(hit.node, expect);
            if (expect != st.root()) {
                ASSERT_EQ(hit.len, elen);
            }
        }
    }
}

TEST(SuffixTree, DebugDumpStable) {
    TextIndex idx(Text{"aba"});
    SuffixTree st(idx);
    // root; sentinel leaf; "a" node with leaves 3 and 1; leaf 2
    EXPECT_EQ(st.debug_dump(),
              "1 d=0 [1..4]\n"
              "  2 d=1 [1..1] suffix=4\n"
              "  3 d=1 [2..3]\n"
              "    4 d=2 [2..2] suffix=3\n"
              "    5 d=4 [3..3] suffix=1\n"
              "  6 d=3 [4..4] suffix=2\n");
}

}  // namespace
