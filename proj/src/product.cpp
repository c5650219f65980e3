#include "leafpower/product.hpp"

#include <algorithm>

#include "leafpower/errors.hpp"

namespace leafpower {

const char* to_string(EdgeColor c) {
    switch (c) {
    case EdgeColor::horizontal: return "horizontal";
    case EdgeColor::vertical: return "vertical";
    case EdgeColor::diagonal: return "diagonal";
    }
    return "?";
}

ProductGraph::ProductGraph(const Graph& g, int k) : base_(g), n_(g.vertex_count()), k_(k) {
    if (k < 3) throw unsupported_cycle_length("cycle length " + std::to_string(k) + " < 3 is not a simple cycle");
    build();
}

ProductGraph::ProductGraph(const LabeledGraph& g, int k)
    : base_(g.graph()), n_(g.graph().vertex_count()), k_(k), base_ranges_(g.ranges()) {
    if (k < 3) throw unsupported_cycle_length("cycle length " + std::to_string(k) + " < 3 is not a simple cycle");
    build();
}

void ProductGraph::build() {
    adj_.assign(n_ * k_, {});
    auto add = [&](int a, int b, EdgeColor c, int base_edge) {
        if (a > b) std::swap(a, b);
        edges_.push_back({a, b, c});
        if (!base_ranges_.empty()) {
            if (base_edge >= 0)
                ranges_.push_back(base_ranges_[base_edge]);
            else
                ranges_.push_back(std::nullopt);
        }
    };
    for (int v = 0; v < n_; ++v)
        for (int r = 0; r < k_; ++r) add(id(v, r), id(v, (r + 1) % k_), EdgeColor::horizontal, -1);
    for (int e = 0; e < base_.edge_count(); ++e) {
        auto [u, v] = base_.edges()[e];
        for (int r = 0; r < k_; ++r) {
            add(id(u, r), id(v, r), EdgeColor::vertical, e);
            add(id(u, r), id(v, (r + 1) % k_), EdgeColor::diagonal, e);
            add(id(u, (r + 1) % k_), id(v, r), EdgeColor::diagonal, e);
        }
    }
    // sort edges, keeping ranges aligned
    std::vector<int> order(edges_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::pair(edges_[x].a, edges_[x].b) < std::pair(edges_[y].a, edges_[y].b);
    });
    std::vector<ProductEdge> es;
    std::vector<std::optional<Range>> rs;
    for (int i : order) {
        es.push_back(edges_[i]);
        if (!ranges_.empty()) rs.push_back(ranges_[i]);
    }
    edges_ = std::move(es);
    ranges_ = std::move(rs);
    for (auto& e : edges_) {
        adj_[e.a].push_back(e.b);
        adj_[e.b].push_back(e.a);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::optional<Range> ProductGraph::inherited_range(int edge_index) const {
    if (ranges_.empty()) return std::nullopt;
    return ranges_.at(edge_index);
}

int ProductGraph::count(EdgeColor c) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [c](auto& e) { return e.color == c; }));
}

bool ProductGraph::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) return false;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

Graph ProductGraph::as_graph() const {
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (auto& e : edges_) es.emplace_back(e.a, e.b);
    return Graph(vertex_count(), es);
}

ProductGraph strong_product_with_cycle(const Graph& g, int k) { return ProductGraph(g, k); }
ProductGraph strong_product_with_cycle(const LabeledGraph& g, int k) { return ProductGraph(g, k); }

} // namespace leafpower
