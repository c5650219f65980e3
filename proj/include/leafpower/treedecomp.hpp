#pragma once

#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/verdict.hpp"

namespace leafpower {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // each sorted
    std::vector<int> parent;             // -1 at the root
    int root = -1;

    int bag_count() const { return static_cast<int>(bags.size()); }
    int width() const;
    std::vector<std::vector<int>> children() const;
    // Bags in an order where every child precedes its parent.
    std::vector<int> postorder() const;
};

enum class DecomposeStrategy { min_fill, exact_small };

TreeDecomposition decompose(const Graph& g, DecomposeStrategy s = DecomposeStrategy::min_fill);
// Decomposition from an elimination ordering.
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order);
// Exact treewidth for graphs with at most 12 vertices; throws size_limit otherwise.
int exact_treewidth(const Graph& g, std::vector<int>* order = nullptr);

Verdict validate_decomposition(const Graph& g, const TreeDecomposition& d);

enum class BagKind { leaf, introduce, forget, join, edge };

const char* to_string(BagKind k);

struct NiceDecomposition : TreeDecomposition {
    std::vector<BagKind> kind;
    std::vector<int> vertex;         // introduced or forgotten vertex, else -1
    std::vector<Edge> edge;          // for edge bags, else (-1,-1)
    std::vector<int> edge_bag;       // extra-nice only: graph edge index -> bag
};

NiceDecomposition make_nice(const TreeDecomposition& d);
// Only checks the kind invariants, not coverage of a graph.
Verdict validate_nice(const NiceDecomposition& d);
NiceDecomposition make_extra_nice(const NiceDecomposition& d, const Graph& g);

struct MixedDecomposition {
    NiceDecomposition base;
    int k = 0;
    std::vector<int> product_bag(int bag) const;
    TreeDecomposition product_decomposition() const;
    int width() const;
};

MixedDecomposition lift_to_mixed(const NiceDecomposition& d, int k);

// PACE .td text
std::string write_td(const TreeDecomposition& d, int vertex_count);
TreeDecomposition read_td(const std::string& text);

} // namespace leafpower
