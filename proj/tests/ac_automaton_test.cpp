#include "lzk/ac_automaton.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lzk/flexible.hpp"
#include "lzk/lz78.hpp"
#include "test_util.hpp"

using namespace lzk;

namespace {

std::int32_t state_of(const ACAutomaton& ac, const std::string& s) {
    std::int32_t v = 0;
    for (char c : s) {
        v = ac.child(v, static_cast<std::uint8_t>(c));
        if (!v) return 0;
    }
    return v;
}

TEST(ACAutomaton, RunningExampleConstruction) {
    Text t{"ababbababbabb"};
    auto lz = lz78_trie_factorize(t);
    ACAutomaton ac(lz, t);
    // states: root + a, b, ab, ba, bab, babb
    EXPECT_EQ(ac.size(), 7);
    std::int32_t bab = state_of(ac, "bab");
    std::int32_t ab = state_of(ac, "ab");
    ASSERT_NE(bab, 0);
    ASSERT_NE(ab, 0);
    EXPECT_EQ(ac.suffix_link(bab), ab);
    // depth-1 states link to the root
    EXPECT_EQ(ac.suffix_link(state_of(ac, "a")), 0);
    EXPECT_EQ(ac.suffix_link(state_of(ac, "b")), 0);
    // end positions strictly grow along paths
    for (std::int32_t v = 1; v < ac.size(); ++v) EXPECT_GT(ac.end(v), ac.end(ac.parent(v)));
}

TEST(ACAutomaton, SingleFactorDictionary) {
    Text t{"q"};
    auto lz = lz78_trie_factorize(t);
    ACAutomaton ac(lz, t);
    EXPECT_EQ(ac.size(), 2);
}

TEST(ACAutomaton, InconsistentTextRejected) {
    Text t{"ababbababbabb"};
    auto lz = lz78_trie_factorize(t);
    ACAutomaton ac(lz, t);
    Text other{"ababbababbabX"};
    EXPECT_THROW(fp78_factorize_ac(ac, other), InconsistentAutomaton);
    Text shorter{"abab"};
    EXPECT_THROW(fp78_factorize_ac(ac, shorter), InconsistentAutomaton);
}

TEST(ACAutomaton, Fp78WorkedExample) {
    Text t{"aabaabbabba"};
    auto lz = lz78_trie_factorize(t);
    ACAutomaton ac(lz, t);
    auto f = fp78_factorize_ac(ac, t);
    ASSERT_EQ(f.factor_count(), 6) << test::dump(f);
}

TEST(ACAutomaton, AllDistinctText) {
    Text t{"abcdef"};
    auto lz = lz78_trie_factorize(t);
    ACAutomaton ac(lz, t);
    auto f = fp78_factorize_ac(ac, t);
    EXPECT_EQ(f.factor_count(), 6);
}

TEST(ACAutomaton, MatchesSuffixTreeBackend) {
    std::mt19937 rng(601);
    const int sigmas[] = {2, 3, 4, 16};
    for (int it = 0; it < 200; ++it) {
        Text t = test::random_text(rng, 512, sigmas[it % 4]);
        TextIndex idx(t);
        SuffixTree st(idx);
        QueryHandle h(st);
        auto tree_out = fp78_factorize(h);
        auto lz = lz78_trie_factorize(t);
        ACAutomaton ac(lz, t);
        ACScanStats stats;
        auto ac_out = fp78_factorize_ac(ac, t, &stats);
        ASSERT_TRUE(same_factors(tree_out, ac_out))
            << t.str() << "\n" << test::dump(tree_out) << "\n" << test::dump(ac_out);
        // amortized window argument: transitions stay linear
        ASSERT_LE(stats.goto_steps + stats.slink_steps, 4 * static_cast<std::int64_t>(t.size())) << t.str();
        ASSERT_LE(stats.memo_writes, static_cast<std::int64_t>(t.size()) + 1) << t.str();
    }
}

}  // namespace
