#pragma once

#include <optional>
#include <vector>

#include "leafpower/graph.hpp"

namespace leafpower {

enum class EdgeColor { horizontal, vertical, diagonal };

const char* to_string(EdgeColor c);

struct ProductEdge {
    int a;  // a < b, ids are v*k + r
    int b;
    EdgeColor color;
};

// G strong-product C_k. Vertex (v, r) has id v*k + r.
class ProductGraph {
public:
    ProductGraph(const Graph& g, int k);
    ProductGraph(const LabeledGraph& g, int k);

    int base_vertex_count() const { return n_; }
    int cycle_length() const { return k_; }
    int vertex_count() const { return n_ * k_; }
    int id(int v, int r) const { return v * k_ + r; }
    int base(int x) const { return x / k_; }
    int residue(int x) const { return x % k_; }

    const std::vector<ProductEdge>& edges() const { return edges_; }
    bool labeled() const { return !ranges_.empty(); }
    // Range inherited from the base edge; only for non-horizontal edges of a labeled product.
    std::optional<Range> inherited_range(int edge_index) const;
    int count(EdgeColor c) const;
    bool has_edge(int a, int b) const;
    bool adjacent_levels(int u, int v) const { return base_.has_edge(u, v); }
    const Graph& base_graph() const { return base_; }

    // Plain graph on the product vertices, for decomposition validation.
    Graph as_graph() const;

private:
    void build();

    Graph base_;
    int n_ = 0;
    int k_ = 0;
    std::vector<ProductEdge> edges_;
    std::vector<std::optional<Range>> ranges_;
    std::vector<Range> base_ranges_;
    std::vector<std::vector<int>> adj_;
};

ProductGraph strong_product_with_cycle(const Graph& g, int k);
ProductGraph strong_product_with_cycle(const LabeledGraph& g, int k);

} // namespace leafpower
