#include <gtest/gtest.h>

#include "leafpower/dp.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/reference.hpp"

using namespace leafpower;

namespace {

DPContext context(const Graph& g, int k) {
    DPContext c;
    c.g = &g;
    c.cap = k;
    return c;
}

} // namespace

TEST(Transitions, LeafPicturesHoldOneSlot) {
    auto ps = stored_leaf_pictures(0, 4);
    ASSERT_FALSE(ps.empty());
    for (auto& p : ps) {
        EXPECT_EQ(p.slots(), 1);
        EXPECT_EQ(p.vertices[0], 0);
        EXPECT_TRUE(p.residue.empty());
    }
    EXPECT_GE(leaf_bag_pictures(0, 4).size(), ps.size());
}

TEST(Transitions, IntroduceAddsOpenSingleton) {
    Graph g = graphs::path(2);
    auto ctx = context(g, 3);
    auto ps = introduce_transition(stored_leaf_pictures(0, 3), 1, ctx);
    ASSERT_FALSE(ps.empty());
    for (auto& p : ps) {
        ASSERT_EQ(p.slots(), 2);
        int s = p.slot_of(1);
        EXPECT_EQ(p.len[s], 1);
        EXPECT_TRUE(p.open[s]);
        EXPECT_NE(p.comp[s], p.comp[p.slot_of(0)]);
        EXPECT_EQ(p.par[s], kNoParent);
    }
}

TEST(Transitions, EdgeMergesComponents) {
    Graph g = graphs::path(2);
    auto ctx = context(g, 3);
    auto two = introduce_transition(stored_leaf_pictures(0, 3), 1, ctx);
    auto joined = edge_transition(two, {0, 1}, ctx);
    // the unattached copy survives; the edge may still be realised through later attachments
    int merged = 0, kept = 0;
    for (auto& p : joined) {
        int a = p.node(p.slot_of(0), 0), b = p.node(p.slot_of(1), 0);
        if (p.component_count() == 2) {
            ++kept;
            EXPECT_EQ(p.d(a, b), kApart);
            continue;
        }
        ++merged;
        EXPECT_LE(p.d(a, b), 3);
        EXPECT_GE(p.d(a, b), 2);
    }
    EXPECT_GT(merged, 0);
    EXPECT_EQ(kept, static_cast<int>(two.size()));
}

TEST(Transitions, ForgetNeedsNeighboursInComponent) {
    Graph g = graphs::path(2);
    auto ctx = context(g, 3);
    auto two = introduce_transition(stored_leaf_pictures(0, 3), 1, ctx);
    // 0 is alone in its component while 1 remains
    EXPECT_TRUE(forget_transition(two, 0, ctx).empty());
    auto joined = edge_transition(two, {0, 1}, ctx);
    auto one = forget_transition(joined, 0, ctx);
    ASSERT_FALSE(one.empty());
    bool any_root = false;
    for (auto& p : one) {
        EXPECT_EQ(p.slots(), 1);
        any_root = any_root || root_accepts(p, ctx);
    }
    EXPECT_TRUE(any_root);
}

TEST(Transitions, JoinOfCompatiblePictures) {
    Graph g = graphs::path(3);
    auto ctx = context(g, 3);
    // both sides hold {1}; left forgot 0, right forgot 2
    auto base = stored_leaf_pictures(1, 3);
    auto left = forget_transition(edge_transition(introduce_transition(stored_leaf_pictures(0, 3), 1, ctx), {0, 1}, ctx), 0, ctx);
    auto right = forget_transition(edge_transition(introduce_transition(stored_leaf_pictures(2, 3), 1, ctx), {1, 2}, ctx), 2, ctx);
    auto both = join_transition(left, right, ctx);
    ASSERT_FALSE(both.empty());
    bool accepted = false;
    for (auto& p : both) accepted = accepted || root_accepts(p, ctx);
    EXPECT_TRUE(accepted);
    EXPECT_FALSE(base.empty());
}

TEST(Recognize, SmallCases) {
    EXPECT_TRUE(recognize(graphs::path(3), 3).yes);
    EXPECT_TRUE(recognize(graphs::path(4), 3).yes);
    EXPECT_TRUE(recognize(graphs::path(7), 3).yes);
    EXPECT_FALSE(recognize(graphs::star(3), 2).yes);
    EXPECT_TRUE(recognize(graphs::complete(5), 2).yes);
    EXPECT_FALSE(recognize(graphs::path(3), 2).yes);
    EXPECT_TRUE(recognize(graphs::empty(0), 3).yes);
    EXPECT_TRUE(recognize(graphs::empty(4), 3).yes);
    for (int n = 4; n <= 7; ++n)
        for (int k = 3; k <= 5; ++k) EXPECT_FALSE(recognize(graphs::cycle(n), k).yes) << n << " " << k;
    EXPECT_FALSE(recognize(graphs::bull(), 3).yes);
    EXPECT_TRUE(recognize(graphs::bull(), 4).yes);
    EXPECT_THROW(recognize(graphs::path(3), 1), invalid_parameter);
}

TEST(Recognize, WitnessesVerify) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int k = 3 + seed % 4;
        auto b = reference::random_leaf_power_instance(3 + seed % 6, k, seed);
        for (bool twins : {true, false}) {
            // without twin collapsing the table grows quickly with k and the leaf count
            if (!twins && (k > 4 || b.graph.vertex_count() > 6)) continue;
            Limits lim;
            lim.reduce_twins = twins;
            auto r = recognize(b.graph, k, lim);
            ASSERT_TRUE(r.yes) << seed;
            EXPECT_TRUE(verify_leaf_root(b.graph, *r.witness, k).ok()) << seed;
        }
    }
}

TEST(Recognize, DisconnectedInputs) {
    Graph g = graphs::disjoint_union(graphs::path(4), graphs::complete(3));
    auto r = recognize(g, 3);
    ASSERT_TRUE(r.yes);
    EXPECT_EQ(r.components.size(), 2u);
    EXPECT_EQ(r.component_witnesses.size(), 2u);
    EXPECT_TRUE(verify_leaf_root(g, *r.witness, 3).ok());
    Graph bad = graphs::disjoint_union(graphs::path(2), graphs::cycle(4));
    EXPECT_FALSE(recognize(bad, 3).yes);
}

TEST(Recognize, AgreesWithBruteForceOnSmallGraphs) {
    for (int n = 3; n <= 5; ++n)
        for (const Graph& g : reference::connected_graphs(n))
            for (int k = 3; k <= (n <= 4 ? 4 : 3); ++k) {
                Limits lim;
                lim.reduce_twins = false;
                bool dp = recognize(g, k, lim).yes;
                auto bf = reference::brute_force_recognize(g, k, std::min(18, n * k));
                ASSERT_NE(bf.answer, reference::Answer::no_within_budget);
                EXPECT_EQ(dp, bf.yes()) << "n=" << n << " k=" << k;
            }
}

TEST(RecognizeLabeled, RangesAreHonoured) {
    // path 0-1-2; two edges at distance 2 make 0 and 2 siblings of 1
    Graph p = graphs::path(3);
    LabeledGraph tight(p, {{2, 2}, {2, 2}}, 3);
    EXPECT_FALSE(recognize_labeled(tight, 3).yes);
    LabeledGraph loose(p, {{2, 2}, {2, 2}}, 4);
    EXPECT_FALSE(recognize_labeled(loose, 4).yes);
    // leaf 1 has one neighbour b, so 0 and 2 lie within 4 of each other through b
    LabeledGraph squeezed(p, {{2, 3}, {2, 3}}, 4);
    EXPECT_FALSE(recognize_labeled(squeezed, 4).yes);
    for (auto [ranges, K] : {std::pair{std::vector<Range>{{2, 3}, {2, 3}}, 3},
                             std::pair{std::vector<Range>{{2, 4}, {2, 4}}, 4}}) {
        LabeledGraph ok(p, ranges, K);
        auto r = recognize_labeled(ok, K);
        ASSERT_TRUE(r.yes) << K;
        EXPECT_TRUE(verify_labeled_leaf_root(ok, *r.witness, K).ok());
    }
    LabeledGraph out_of_cap(p, {{2, 5}, {2, 2}}, 5);
    EXPECT_THROW(recognize_labeled(out_of_cap, 4), invalid_parameter);
}

TEST(RecognizeLabeled, GeneratedInstancesAccepted) {
    for (uint64_t seed = 0; seed < 24; ++seed) {
        int K = 3 + seed % 4;
        auto b = reference::random_leaf_power_instance(3 + seed % 5, K, seed, true);
        auto r = recognize_labeled(*b.labeled, K);
        ASSERT_TRUE(r.yes) << seed;
        EXPECT_TRUE(verify_labeled_leaf_root(*b.labeled, *r.witness, K).ok());
    }
}

TEST(Limits, PictureCapRaises) {
    auto b = reference::random_leaf_power_instance(8, 5, 17);
    Limits lim;
    lim.max_pictures_per_bag = 2;
    lim.reduce_twins = false;
    EXPECT_THROW(recognize(b.graph, 5, lim), resource_cap);
}

TEST(Limits, SizeGuard) { EXPECT_THROW(recognize(graphs::path(5), 130), size_limit); }

TEST(Assembly, JoinUnderRootUsesLongPaths) {
    std::vector<LeafRootTree> parts;
    LeafRootTree single;
    single.parent = {0};
    single.leaf_map = {0};
    parts.push_back(single);
    parts.push_back(single);
    LeafRootTree t = join_under_root(parts, {{0}, {1}}, 2, 3);
    EXPECT_TRUE(verify_leaf_root(graphs::empty(2), t, 3).ok());
    auto leaf = t.leaf_of_vertex(2);
    EXPECT_GT(tree_distances(t, leaf[0])[leaf[1]], 3);
}
