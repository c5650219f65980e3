#include "leafpower/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "leafpower/errors.hpp"
#include "leafpower/verdict.hpp"

namespace leafpower {

std::string Verdict::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].code << ": " << violations[i].detail;
    }
    return os.str();
}

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n), adj_(n) {
    if (n < 0) throw invalid_input("negative vertex count");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw invalid_input("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw invalid_input("self-loop on vertex " + std::to_string(u));
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1])
            throw invalid_input("duplicate edge " + std::to_string(edges_[i].first) + " " +
                                std::to_string(edges_[i].second));
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& a = adj_[u].size() < adj_[v].size() ? adj_[u] : adj_[v];
    int t = adj_[u].size() < adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
}

int Graph::edge_index(int u, int v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

void Graph::set_names(std::vector<std::string> names) {
    if (!names.empty() && static_cast<int>(names.size()) != n_)
        throw invalid_input("name table size does not match vertex count");
    names_ = std::move(names);
}

std::string Graph::name(int v) const {
    if (!names_.empty()) return names_[v];
    return std::to_string(v + 1);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
    std::vector<int> pos(n_, -1);
    for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (auto [u, v] : edges_)
        if (pos[u] >= 0 && pos[v] >= 0) es.emplace_back(pos[u], pos[v]);
    Graph h(static_cast<int>(vertices.size()), es);
    if (!names_.empty()) {
        std::vector<std::string> nm;
        for (int v : vertices) nm.push_back(names_[v]);
        h.set_names(nm);
    }
    return h;
}

LabeledGraph::LabeledGraph(Graph g, std::vector<Range> ranges, int cap)
    : g_(std::move(g)), ranges_(std::move(ranges)), cap_(cap) {
    if (static_cast<int>(ranges_.size()) != g_.edge_count())
        throw invalid_input("every edge needs a range");
    for (size_t i = 0; i < ranges_.size(); ++i) {
        auto r = ranges_[i];
        if (!(2 <= r.lo && r.lo <= r.hi && r.hi <= cap_))
            throw invalid_input("range (" + std::to_string(r.lo) + "," + std::to_string(r.hi) +
                                ") on edge " + std::to_string(g_.edges()[i].first + 1) + " " +
                                std::to_string(g_.edges()[i].second + 1) + " violates 2 <= k1 <= k2 <= " +
                                std::to_string(cap_));
    }
}

Range LabeledGraph::range(int u, int v) const {
    int i = g_.edge_index(u, v);
    if (i < 0) throw invalid_input("no edge between " + std::to_string(u) + " and " + std::to_string(v));
    return ranges_[i];
}

LabeledGraph LabeledGraph::with_range(int u, int v, Range r) const {
    int i = g_.edge_index(u, v);
    if (i < 0) throw invalid_input("no such edge");
    auto rs = ranges_;
    rs[i] = r;
    return LabeledGraph(g_, rs, cap_);
}

LabeledGraph LabeledGraph::uniform(const Graph& g, int k) {
    return LabeledGraph(g, std::vector<Range>(g.edge_count(), Range{2, k}), k);
}

Degeneracy degeneracy_order(const Graph& g) {
    int n = g.vertex_count();
    Degeneracy res;
    if (n == 0) return res;
    std::vector<int> deg(n);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, deg[v] = g.degree(v));
    // bucket queue
    std::vector<std::vector<int>> bucket(maxdeg + 1);
    std::vector<int> where(n);
    for (int v = 0; v < n; ++v) {
        where[v] = static_cast<int>(bucket[deg[v]].size());
        bucket[deg[v]].push_back(v);
    }
    std::vector<char> removed(n, 0);
    auto erase = [&](int v) {
        auto& b = bucket[deg[v]];
        int i = where[v];
        int last = b.back();
        b[i] = last;
        where[last] = i;
        b.pop_back();
    };
    int lo = 0;
    for (int step = 0; step < n; ++step) {
        lo = std::max(0, lo - 1);
        while (bucket[lo].empty()) ++lo;
        // smallest id among minimum degree vertices keeps the order deterministic
        auto& b = bucket[lo];
        int v = *std::min_element(b.begin(), b.end());
        erase(v);
        removed[v] = 1;
        res.d = std::max(res.d, lo);
        res.order.push_back(v);
        for (int u : g.neighbors(v)) {
            if (removed[u]) continue;
            erase(u);
            --deg[u];
            where[u] = static_cast<int>(bucket[deg[u]].size());
            bucket[deg[u]].push_back(u);
        }
    }
    return res;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[c].push_back(v);
            for (int u : g.neighbors(v))
                if (comp[u] < 0) {
                    comp[u] = c;
                    stack.push_back(u);
                }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

namespace graphs {

Graph path(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph(n, es);
}

Graph cycle(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, es);
}

Graph complete(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph(n, es);
}

Graph complete_bipartite(int a, int b) {
    std::vector<Edge> es;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
    return Graph(a + b, es);
}

Graph grid(int rows, int cols) {
    std::vector<Edge> es;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) es.emplace_back(v, v + 1);
            if (r + 1 < rows) es.emplace_back(v, v + cols);
        }
    return Graph(rows * cols, es);
}

Graph empty(int n) { return Graph(n); }

Graph star(int leaves) {
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph(leaves + 1, es);
}

Graph bull() { return Graph(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}}); }

Graph dart() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}}); }

Graph gem() { return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}}); }

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es = a.edges();
    int off = a.vertex_count();
    for (auto [u, v] : b.edges()) es.emplace_back(u + off, v + off);
    return Graph(a.vertex_count() + b.vertex_count(), es);
}

} // namespace graphs
} // namespace leafpower
