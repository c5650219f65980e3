#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leafpower {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, const std::vector<Edge>& edges = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    // Edges are stored normalised (u < v) and sorted.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    // Index of edge uv in edges(), or -1.
    int edge_index(int u, int v) const;

    const std::vector<std::string>& names() const { return names_; }
    void set_names(std::vector<std::string> names);
    std::string name(int v) const;

    Graph induced(const std::vector<int>& vertices) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::string> names_;
};

struct Range {
    int lo = 2;
    int hi = 2;
    bool contains(int d) const { return lo <= d && d <= hi; }
    bool operator==(const Range&) const = default;
};

// Graph whose edges carry admissible leaf-distance ranges, with cap K for non-edges.
class LabeledGraph {
public:
    LabeledGraph() = default;
    // ranges[i] belongs to g.edges()[i].
    LabeledGraph(Graph g, std::vector<Range> ranges, int cap);

    const Graph& graph() const { return g_; }
    int cap() const { return cap_; }
    const std::vector<Range>& ranges() const { return ranges_; }
    Range range(int u, int v) const;
    LabeledGraph with_range(int u, int v, Range r) const;

    // Every edge labelled (2, k).
    static LabeledGraph uniform(const Graph& g, int k);

private:
    Graph g_;
    std::vector<Range> ranges_;
    int cap_ = 2;
};

struct Degeneracy {
    int d = 0;
    std::vector<int> order;
};

Degeneracy degeneracy_order(const Graph& g);

// Components sorted by smallest member; each component sorted.
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Small named families used throughout tests and tools.
namespace graphs {
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph grid(int rows, int cols);
Graph empty(int n);
Graph star(int leaves);
Graph bull();
Graph dart();
Graph gem();
Graph disjoint_union(const Graph& a, const Graph& b);
} // namespace graphs

} // namespace leafpower
