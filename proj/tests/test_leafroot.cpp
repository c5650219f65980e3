#include <gtest/gtest.h>

#include <random>

#include "leafpower/errors.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/reference.hpp"

using namespace leafpower;

namespace {

// Path a - x - y - b with leaves a=0, b=1: leaf distance 3.
LeafRootTree two_leaf_path() { return LeafRootTree::from_edges(4, {{0, 2}, {2, 3}, {3, 1}}, 2, {0, 1, -1, -1}); }

} // namespace

TEST(LeafRoot, ValidateCatchesStructure) {
    LeafRootTree t = two_leaf_path();
    EXPECT_NO_THROW(t.validate());
    LeafRootTree bad = t;
    bad.parent[3] = 3;  // second root
    EXPECT_THROW(bad.validate(), invalid_input);
    bad = t;
    bad.leaf_map[2] = 0;  // vertex mapped twice
    EXPECT_THROW(bad.validate(), invalid_input);
}

TEST(LeafRoot, LeafPowerAndVerification) {
    LeafRootTree t = two_leaf_path();
    EXPECT_EQ(leaf_power_of(t, 3), graphs::path(2));
    EXPECT_EQ(leaf_power_of(t, 2).edge_count(), 0);
    EXPECT_TRUE(verify_leaf_root(graphs::path(2), t, 3).ok());
    Verdict far = verify_leaf_root(graphs::path(2), t, 2);
    EXPECT_TRUE(far.has("adjacent-but-far"));
    Verdict near = verify_leaf_root(graphs::empty(2), t, 4);
    EXPECT_TRUE(near.has("nonadjacent-but-near"));
}

TEST(LeafRoot, LabeledVerification) {
    LeafRootTree t = two_leaf_path();
    LabeledGraph ok(graphs::path(2), {{3, 3}}, 4);
    EXPECT_TRUE(verify_labeled_leaf_root(ok, t, 4).ok());
    LabeledGraph tight(graphs::path(2), {{2, 2}}, 4);
    EXPECT_TRUE(verify_labeled_leaf_root(tight, t, 4).has("out-of-range"));
    EXPECT_EQ(labeled_leaf_power_of(t, 4).range(0, 1), (Range{3, 3}));
}

TEST(LeafRoot, SubdivisionAddsTwo) {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        auto b = reference::random_leaf_power_instance(5, 3 + seed % 3, seed);
        LeafRootTree s = subdivide_leaf_edges(b.witness);
        EXPECT_TRUE(verify_leaf_root(b.graph, s, b.k + 2).ok()) << seed;
        auto d0 = tree_distances(b.witness, b.witness.leaf_of_vertex(b.graph.vertex_count())[0]);
        auto d1 = tree_distances(s, s.leaf_of_vertex(b.graph.vertex_count())[0]);
        auto l0 = b.witness.leaf_of_vertex(b.graph.vertex_count());
        auto l1 = s.leaf_of_vertex(b.graph.vertex_count());
        for (int v = 1; v < b.graph.vertex_count(); ++v) EXPECT_EQ(d1[l1[v]], d0[l0[v]] + 2);
    }
}

TEST(LeafRoot, PruneKeepsVerification) {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        auto b = reference::random_leaf_power_instance(6, 4, seed);
        LeafRootTree p = prune_leaf_root(b.witness, b.k);
        EXPECT_LE(p.node_count(), b.witness.node_count());
        EXPECT_TRUE(verify_leaf_root(b.graph, p, b.k).ok()) << seed;
    }
}

TEST(LeafRoot, NearestLeafLabels) {
    LeafRootTree t = two_leaf_path();
    auto lab = nearest_leaf_labeling(t);
    EXPECT_EQ(lab[0], 0);
    EXPECT_EQ(lab[1], 1);
    EXPECT_EQ(lab[2], 0);
    EXPECT_EQ(lab[3], 1);
}

TEST(Embedding, RandomWitnessesEmbed) {
    int checked = 0;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        int k = 3 + seed % 4;
        auto b = reference::random_leaf_power_instance(3 + seed % 5, k, seed);
        if (b.graph.vertex_count() < 3 || !is_connected(b.graph)) continue;
        ProductGraph p(b.graph, k);
        ProductSubtree s = embed_in_product(b.graph, b.witness, k, p);
        std::vector<int> seen(p.vertex_count(), 0);
        for (int x : s.image)
            if (x >= 0) EXPECT_EQ(seen[x]++, 0) << "image not injective, seed " << seed;
        for (int v = 0; v < b.graph.vertex_count(); ++v) EXPECT_EQ(p.base(s.leaf_of_level[v]), v);
        EXPECT_TRUE(check_product_subtree(p, s.edge_set, k).ok()) << seed;
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(Embedding, CheckerRejectsBrokenSubtrees) {
    Graph g = graphs::complete(3);
    LeafRootTree star = LeafRootTree::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}, 0, {-1, 0, 1, 2});
    ProductGraph p(g, 4);
    ProductSubtree s = embed_in_product(g, star, 4, p);
    ASSERT_TRUE(check_product_subtree(p, s.edge_set, 4).ok());
    auto with_cycle = s.edge_set;
    for (int r = 0; r < 4; ++r) with_cycle.emplace_back(p.id(1, r), p.id(1, (r + 1) % 4));
    EXPECT_FALSE(check_product_subtree(p, with_cycle, 4).ok());
    // residues 0 and 2 are not adjacent on a 4-cycle
    auto foreign = s.edge_set;
    foreign.emplace_back(p.id(0, 0), p.id(0, 2));
    EXPECT_TRUE(check_product_subtree(p, foreign, 4).has("not-product-edge"));
    EXPECT_FALSE(check_product_subtree(p, {}, 4).ok());
}

TEST(SubsetDistances, BreadthFirstWithCap) {
    std::vector<Edge> s{{0, 1}, {1, 2}, {2, 3}};
    auto d = subset_distances(5, s, 0, 2);
    EXPECT_EQ(d, (std::vector<int>{0, 1, 2, -1, -1}));
}
