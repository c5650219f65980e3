#include <gtest/gtest.h>

#include <filesystem>

#include "leafpower/errors.hpp"
#include "leafpower/reference.hpp"

using namespace leafpower;
using namespace leafpower::reference;

TEST(TreeEnumeration, FreeTreeCounts) {
    // OEIS A000055
    std::vector<size_t> want{1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235};
    for (int n = 1; n < static_cast<int>(want.size()); ++n) EXPECT_EQ(free_trees(n).size(), want[n]) << n;
}

TEST(TreeEnumeration, PrueferClassesMatchFreeTrees) {
    for (int n = 3; n <= 8; ++n) {
        auto by_leaves = tree_counts_by_pruefer(n);
        std::vector<long> direct(n + 1, 0);
        for (auto& t : free_trees(n)) ++direct[t.leaves().size()];
        for (int l = 0; l <= n; ++l) EXPECT_EQ(by_leaves[l], direct[l]) << n << " " << l;
    }
}

TEST(TreeEnumeration, CanonicalFormsAreDistinct) {
    std::set<std::string> forms;
    for (auto& t : free_trees(9)) forms.insert(tree_canonical_form(t));
    EXPECT_EQ(forms.size(), free_trees(9).size());
}

TEST(TreeEnumeration, LeafCountFilter) {
    int count = 0;
    for_each_tree(6, 3, [&](const TreeShape& t) {
        EXPECT_EQ(t.leaves().size(), 3u);
        EXPECT_LE(t.n, 6);
        ++count;
    });
    EXPECT_EQ(count, static_cast<int>(enumerate_trees(6, 3).size()));
    EXPECT_THROW(enumerate_trees(19, 3), size_limit);
}

TEST(BruteForce, SmallAnswers) {
    EXPECT_TRUE(brute_force_recognize(graphs::path(3), 3, 9).yes());
    EXPECT_EQ(brute_force_recognize(graphs::cycle(4), 3, 12).answer, Answer::no);
    EXPECT_EQ(brute_force_recognize(graphs::cycle(4), 3, 8).answer, Answer::no_within_budget);
    EXPECT_EQ(brute_force_recognize(graphs::empty(2), 3, 6).answer, Answer::yes);
    EXPECT_THROW(brute_force_recognize(graphs::path(4), 3, 3), invalid_parameter);
    auto r = brute_force_recognize(graphs::bull(), 4, 18);
    ASSERT_TRUE(r.yes());
    EXPECT_TRUE(verify_leaf_root(graphs::bull(), *r.witness, 4).ok());
}

TEST(BruteForce, Labeled) {
    LabeledGraph lg(graphs::path(3), {{2, 2}, {2, 2}}, 3);
    EXPECT_EQ(brute_force_recognize_labeled(lg, 3, 9).answer, Answer::no);
    LabeledGraph ok(graphs::path(3), {{3, 3}, {2, 3}}, 3);
    auto r = brute_force_recognize_labeled(ok, 3, 9);
    ASSERT_TRUE(r.yes());
    EXPECT_TRUE(verify_labeled_leaf_root(ok, *r.witness, 3).ok());
}

TEST(BruteForce, DisconnectedRejectionsAreExact) {
    Graph c4k1 = graphs::disjoint_union(graphs::cycle(4), graphs::empty(1));
    EXPECT_EQ(brute_force_recognize(c4k1, 3, 15).answer, Answer::no);
    EXPECT_EQ(brute_force_recognize(c4k1, 3, 11).answer, Answer::no_within_budget);
    LabeledGraph lg(graphs::disjoint_union(graphs::star(2), graphs::empty(1)), {{2, 2}, {2, 2}}, 4);
    EXPECT_EQ(brute_force_recognize_labeled(lg, 4, 16).answer, Answer::no);
    EXPECT_TRUE(brute_force_recognize(graphs::disjoint_union(graphs::path(2), graphs::empty(1)), 3, 9).yes());
}

TEST(ClosedForms, ChordalityAndK3) {
    EXPECT_TRUE(is_chordal(graphs::gem()));
    EXPECT_FALSE(is_chordal(graphs::cycle(5)));
    auto order = lex_bfs(graphs::gem());
    std::reverse(order.begin(), order.end());
    EXPECT_TRUE(is_perfect_elimination_order(graphs::gem(), order));
    EXPECT_TRUE(contains_induced(graphs::gem(), graphs::path(4)));
    EXPECT_FALSE(contains_induced(graphs::path(6), graphs::cycle(3)));
    EXPECT_TRUE(recognize_k2(graphs::disjoint_union(graphs::complete(3), graphs::complete(2))));
    EXPECT_FALSE(recognize_k2(graphs::path(3)));
    EXPECT_FALSE(recognize_k3(graphs::bull()));
    EXPECT_FALSE(recognize_k3(graphs::dart()));
    EXPECT_FALSE(recognize_k3(graphs::gem()));
    EXPECT_TRUE(recognize_k3(graphs::path(6)));
}

TEST(ClosedForms, K3MatchesBruteForce) {
    for (int n = 3; n <= 5; ++n)
        for (auto& g : connected_graphs(n)) EXPECT_EQ(recognize_k3(g), brute_force_recognize(g, 3, 3 * n).yes());
}

TEST(GraphEnumeration, ConnectedCounts) {
    // OEIS A001349
    std::vector<size_t> want{0, 1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(connected_graphs(n).size(), want[n]) << n;
}

TEST(GraphEnumeration, LabeledGraphsCoverRanges) {
    auto two = labeled_graphs(2, 4);
    // empty graph plus the six ranges inside [2,4]
    EXPECT_EQ(two.size(), 7u);
    for (auto& g : labeled_graphs(3, 3))
        for (auto& r : g.ranges()) {
            EXPECT_GE(r.lo, 2);
            EXPECT_LE(r.hi, 3);
        }
}

TEST(Generators, RandomInstancesAreLeafPowers) {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        int k = 3 + seed % 4;
        auto b = random_leaf_power_instance(3 + seed % 6, k, seed);
        EXPECT_LE(b.witness.node_count(), (3 + static_cast<int>(seed % 6)) * k);
        EXPECT_TRUE(verify_leaf_root(b.graph, b.witness, k).ok());
        auto again = random_leaf_power_instance(3 + seed % 6, k, seed);
        EXPECT_EQ(again.graph, b.graph);
    }
    auto lb = random_leaf_power_instance(6, 4, 3, true);
    ASSERT_TRUE(lb.labeled.has_value());
    EXPECT_TRUE(verify_labeled_leaf_root(*lb.labeled, lb.witness, 4).ok());
}

TEST(Generators, CaterpillarWindow) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        auto b = caterpillar_instance(200, seed);
        EXPECT_EQ(b.graph.vertex_count(), 200);
        EXPECT_TRUE(verify_leaf_root(b.graph, b.witness, 4).ok());
        // cliques of a 4-leaf power of this caterpillar stay within four vertices
        EXPECT_LE(degeneracy_order(b.graph).d, 3);
    }
}

TEST(Generators, BundleRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "leafpower_bundle_test";
    auto b = random_leaf_power_instance(5, 3, 9, true);
    write_bundle(dir.string(), b);
    auto back = read_bundle(dir.string());
    EXPECT_EQ(back.graph, b.graph);
    EXPECT_EQ(back.k, 3);
    EXPECT_EQ(back.seed, 9u);
    ASSERT_TRUE(back.labeled.has_value());
    EXPECT_EQ(back.labeled->ranges(), b.labeled->ranges());
    EXPECT_TRUE(verify_leaf_root(back.graph, back.witness, 3).ok());
    std::filesystem::remove_all(dir);
}
