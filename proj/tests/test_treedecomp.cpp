#include <gtest/gtest.h>

#include <random>

#include "leafpower/errors.hpp"
#include "leafpower/product.hpp"
#include "leafpower/treedecomp.hpp"

using namespace leafpower;

namespace {

Graph random_graph(int n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) es.emplace_back(u, v);
    return Graph(n, es);
}

} // namespace

TEST(TreeDecomposition, KnownWidths) {
    EXPECT_EQ(decompose(graphs::path(8)).width(), 1);
    EXPECT_EQ(decompose(graphs::cycle(8)).width(), 2);
    EXPECT_EQ(decompose(graphs::complete(5)).width(), 4);
    EXPECT_EQ(exact_treewidth(graphs::grid(3, 3)), 3);
    EXPECT_EQ(exact_treewidth(graphs::complete_bipartite(3, 3)), 3);
    EXPECT_THROW(exact_treewidth(graphs::path(13)), size_limit);
}

TEST(TreeDecomposition, HeuristicIsValidAndNotBelowExact) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = random_graph(9, 0.35, seed);
        TreeDecomposition d = decompose(g);
        EXPECT_TRUE(validate_decomposition(g, d).ok()) << seed;
        std::vector<int> order;
        int tw = exact_treewidth(g, &order);
        EXPECT_GE(d.width(), tw);
        EXPECT_EQ(decomposition_from_order(g, order).width(), tw);
        EXPECT_EQ(decompose(g, DecomposeStrategy::exact_small).width(), tw);
    }
}

TEST(TreeDecomposition, ValidatorFindsProblems) {
    Graph g = graphs::cycle(4);
    TreeDecomposition d;
    d.bags = {{0, 1, 2}, {2, 3}};
    d.parent = {-1, 0};
    d.root = 0;
    EXPECT_TRUE(validate_decomposition(g, d).has("edge-uncovered"));
    d.bags = {{0, 1}, {1, 2}, {0, 2, 3}};
    d.parent = {-1, 0, 1};
    EXPECT_TRUE(validate_decomposition(g, d).has("disconnected-occurrence"));
    d.bags = {{0, 1, 2}};
    d.parent = {-1};
    EXPECT_TRUE(validate_decomposition(g, d).has("vertex-missing"));
}

TEST(NiceDecomposition, KindsAndCoverage) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = random_graph(10, 0.3, seed + 100);
        NiceDecomposition nd = make_nice(decompose(g));
        EXPECT_TRUE(validate_nice(nd).ok());
        EXPECT_TRUE(validate_decomposition(g, nd).ok());
        NiceDecomposition en = make_extra_nice(nd, g);
        EXPECT_TRUE(validate_nice(en).ok());
        EXPECT_TRUE(validate_decomposition(g, en).ok());
        // every edge gets exactly one edge bag
        std::vector<int> hits(g.edge_count(), 0);
        for (int b = 0; b < en.bag_count(); ++b)
            if (en.kind[b] == BagKind::edge) ++hits[g.edge_index(en.edge[b].first, en.edge[b].second)];
        for (int h : hits) EXPECT_EQ(h, 1);
        EXPECT_EQ(static_cast<int>(en.edge_bag.size()), g.edge_count());
    }
}

TEST(MixedDecomposition, LiftStaysWithinBound) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = random_graph(8, 0.4, seed + 200);
        NiceDecomposition nd = make_nice(decompose(g));
        for (int k = 3; k <= 5; ++k) {
            MixedDecomposition m = lift_to_mixed(nd, k);
            EXPECT_LE(m.width(), k * (nd.width() + 1) - 1);
            ProductGraph p(g, k);
            EXPECT_TRUE(validate_decomposition(p.as_graph(), m.product_decomposition()).ok());
        }
    }
    EXPECT_THROW(lift_to_mixed(make_nice(decompose(graphs::path(3))), 2), unsupported_cycle_length);
}

TEST(TdFormat, RoundTrip) {
    Graph g = graphs::grid(3, 4);
    TreeDecomposition d = decompose(g);
    TreeDecomposition back = read_td(write_td(d, g.vertex_count()));
    EXPECT_EQ(back.width(), d.width());
    EXPECT_TRUE(validate_decomposition(g, back).ok());
    EXPECT_THROW(read_td("s td 2 2 3\nb 1 1 2\n"), invalid_input);
}
