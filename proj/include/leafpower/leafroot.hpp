#pragma once

#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/product.hpp"
#include "leafpower/verdict.hpp"

namespace leafpower {

// Rooted tree whose leaves stand for base-graph vertices.
struct LeafRootTree {
    std::vector<int> parent;    // root maps to itself
    int root = 0;
    std::vector<int> leaf_map;  // node -> base vertex, -1 for non-leaves

    int node_count() const { return static_cast<int>(parent.size()); }
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    // Leaf node of each base vertex (size = max mapped vertex + 1, -1 where absent).
    std::vector<int> leaf_of_vertex(int n) const;
    std::vector<int> leaves() const;

    // Throws invalid_input if the structural invariants fail.
    void validate() const;

    // Build from undirected edges: parent pointers are derived by rooting at `root`.
    static LeafRootTree from_edges(int node_count, const std::vector<Edge>& edges, int root,
                                   std::vector<int> leaf_map);
};

// All distances from one node; unreachable nodes get -1.
std::vector<int> tree_distances(const LeafRootTree& t, int from);

Graph leaf_power_of(const LeafRootTree& t, int k);
LabeledGraph labeled_leaf_power_of(const LeafRootTree& t, int K);

Verdict verify_leaf_root(const Graph& g, const LeafRootTree& t, int k);
Verdict verify_labeled_leaf_root(const LabeledGraph& g, const LeafRootTree& t, int K);

// Subdivide every edge incident to a leaf. A k-leaf root becomes a (k+2)-leaf root.
LeafRootTree subdivide_leaf_edges(const LeafRootTree& t);

// Drop nodes and edges that lie on no leaf-to-leaf path of length <= k, then re-root
// at an interior node. Leaves that lose all their edges are kept only if the result
// would otherwise be empty.
LeafRootTree prune_leaf_root(const LeafRootTree& t, int k);

// Each node labelled by the base vertex of a closest leaf. Ties prefer labels carried by
// children, smallest vertex id first.
std::vector<int> nearest_leaf_labeling(const LeafRootTree& t);

struct ProductSubtree {
    const ProductGraph* product = nullptr;
    std::vector<Edge> edge_set;       // pairs of product vertex ids, a < b
    std::vector<int> leaf_of_level;   // base vertex -> product vertex
    std::vector<int> image;           // tree node -> product vertex
};

struct EmbedOptions {
    bool prune = true;  // normalise the witness before embedding
};

ProductSubtree embed_in_product(const Graph& g, const LeafRootTree& t, int k, const ProductGraph& p,
                                EmbedOptions opt = {});

Verdict check_product_subtree(const ProductGraph& p, const std::vector<Edge>& s, int k);
Verdict check_labeled_product_subtree(const ProductGraph& p, const std::vector<Edge>& s, int K);

// Distances in an edge subset of the product, breadth-first, capped: values > cap become -1.
std::vector<int> subset_distances(int vertex_count, const std::vector<Edge>& s, int from, int cap);

} // namespace leafpower
