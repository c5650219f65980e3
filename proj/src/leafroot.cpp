#include "leafpower/leafroot.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "leafpower/errors.hpp"

namespace leafpower {

std::vector<std::vector<int>> LeafRootTree::adjacency() const {
    std::vector<std::vector<int>> adj(node_count());
    for (int v = 0; v < node_count(); ++v)
        if (parent[v] != v) {
            adj[v].push_back(parent[v]);
            adj[parent[v]].push_back(v);
        }
    return adj;
}

std::vector<int> LeafRootTree::degrees() const {
    std::vector<int> d(node_count(), 0);
    for (int v = 0; v < node_count(); ++v)
        if (parent[v] != v) {
            ++d[v];
            ++d[parent[v]];
        }
    return d;
}

std::vector<int> LeafRootTree::leaf_of_vertex(int n) const {
    std::vector<int> out(n, -1);
    for (int x = 0; x < node_count(); ++x)
        if (leaf_map[x] >= 0 && leaf_map[x] < n) out[leaf_map[x]] = x;
    return out;
}

std::vector<int> LeafRootTree::leaves() const {
    std::vector<int> out;
    for (int x = 0; x < node_count(); ++x)
        if (leaf_map[x] >= 0) out.push_back(x);
    return out;
}

void LeafRootTree::validate() const {
    int n = node_count();
    if (n == 0) throw invalid_input("empty tree");
    if (static_cast<int>(leaf_map.size()) != n) throw invalid_input("leaf map size mismatch");
    if (root < 0 || root >= n || parent[root] != root) throw invalid_input("root must be self-parented");
    for (int v = 0; v < n; ++v) {
        if (parent[v] < 0 || parent[v] >= n) throw invalid_input("parent out of range at node " + std::to_string(v));
        if (v != root && parent[v] == v) throw invalid_input("second root at node " + std::to_string(v));
    }
    // every node must reach the root
    std::vector<int> state(n, 0);  // 0 unknown, 1 on stack, 2 reaches root
    state[root] = 2;
    for (int v = 0; v < n; ++v) {
        std::vector<int> trail;
        int x = v;
        while (state[x] == 0) {
            state[x] = 1;
            trail.push_back(x);
            x = parent[x];
        }
        if (state[x] == 1) throw invalid_input("parent links contain a cycle through node " + std::to_string(x));
        for (int y : trail) state[y] = 2;
    }
    auto deg = degrees();
    std::set<int> seen;
    for (int v = 0; v < n; ++v) {
        bool leaf = v != root && deg[v] <= 1;
        if (leaf != (leaf_map[v] >= 0))
            throw invalid_input(leaf ? "leaf " + std::to_string(v) + " is unmapped"
                                     : "interior node " + std::to_string(v) + " carries a vertex");
        if (leaf && !seen.insert(leaf_map[v]).second)
            throw invalid_input("vertex " + std::to_string(leaf_map[v]) + " mapped twice");
    }
    if (n >= 3 && deg[root] < 2) throw invalid_input("root of a tree with >= 3 nodes must be interior");
}

LeafRootTree LeafRootTree::from_edges(int node_count, const std::vector<Edge>& edges, int root,
                                      std::vector<int> leaf_map) {
    std::vector<std::vector<int>> adj(node_count);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    LeafRootTree t;
    t.parent.assign(node_count, -1);
    t.root = root;
    t.parent[root] = root;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (t.parent[u] < 0) {
                t.parent[u] = v;
                stack.push_back(u);
            }
    }
    for (int v = 0; v < node_count; ++v)
        if (t.parent[v] < 0) throw invalid_input("edges do not form a connected tree");
    if (static_cast<int>(edges.size()) != node_count - 1) throw invalid_input("edge count is not node count - 1");
    t.leaf_map = std::move(leaf_map);
    return t;
}

std::vector<int> tree_distances(const LeafRootTree& t, int from) {
    auto adj = t.adjacency();
    std::vector<int> d(t.node_count(), -1);
    std::deque<int> q{from};
    d[from] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : adj[v])
            if (d[u] < 0) {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
    }
    return d;
}

namespace {

// Leaf-to-leaf distances up to `cap`, as (vertex a, vertex b, distance) with a < b.
struct LeafPair {
    int a, b, d;
};

std::vector<LeafPair> close_leaf_pairs(const LeafRootTree& t, int cap) {
    auto adj = t.adjacency();
    int n = t.node_count();
    std::vector<int> d(n, -1);
    std::vector<LeafPair> out;
    for (int s = 0; s < n; ++s) {
        if (t.leaf_map[s] < 0) continue;
        std::vector<int> touched{s};
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (v != s && t.leaf_map[v] >= 0 && t.leaf_map[s] < t.leaf_map[v])
                out.push_back({t.leaf_map[s], t.leaf_map[v], d[v]});
            if (d[v] == cap) continue;
            for (int u : adj[v])
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    touched.push_back(u);
                    q.push_back(u);
                }
        }
        for (int v : touched) d[v] = -1;
    }
    return out;
}

int mapped_vertex_count(const LeafRootTree& t) {
    int m = -1;
    for (int x : t.leaf_map) m = std::max(m, x);
    return m + 1;
}

// Shared bijection check. Returns false if distances cannot be compared.
bool check_leaf_map(const LeafRootTree& t, int n, Verdict& v) {
    bool good = true;
    try {
        t.validate();
    } catch (const invalid_input& e) {
        v.add("malformed-tree", e.what());
        return false;
    }
    std::vector<int> count(n, 0);
    for (int x = 0; x < t.node_count(); ++x) {
        int m = t.leaf_map[x];
        if (m < 0) continue;
        if (m >= n) {
            v.add("bad-leaf-map", "leaf " + std::to_string(x) + " maps to vertex " + std::to_string(m) +
                                      " outside the graph", {x});
            good = false;
        } else {
            ++count[m];
        }
    }
    for (int u = 0; u < n; ++u)
        if (count[u] == 0) {
            v.add("unmapped-vertex", "vertex " + std::to_string(u) + " has no leaf", {u});
            good = false;
        }
    return good;
}

} // namespace

Graph leaf_power_of(const LeafRootTree& t, int k) {
    std::vector<Edge> es;
    for (auto& p : close_leaf_pairs(t, k)) es.emplace_back(p.a, p.b);
    return Graph(mapped_vertex_count(t), es);
}

LabeledGraph labeled_leaf_power_of(const LeafRootTree& t, int K) {
    auto pairs = close_leaf_pairs(t, K);
    std::vector<Edge> es;
    for (auto& p : pairs) es.emplace_back(p.a, p.b);
    Graph g(mapped_vertex_count(t), es);
    std::vector<Range> rs(g.edge_count());
    for (auto& p : pairs) rs[g.edge_index(p.a, p.b)] = Range{p.d, p.d};
    return LabeledGraph(g, rs, K);
}

Verdict verify_leaf_root(const Graph& g, const LeafRootTree& t, int k) {
    Verdict v;
    int n = g.vertex_count();
    if (!check_leaf_map(t, n, v)) return v;
    std::set<Edge> near;
    for (auto& p : close_leaf_pairs(t, k)) near.insert({p.a, p.b});
    for (auto e : g.edges())
        if (!near.count(e))
            v.add("adjacent-but-far", "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                          " has leaf distance > " + std::to_string(k),
                  {e.first, e.second});
    for (auto e : near)
        if (!g.has_edge(e.first, e.second))
            v.add("nonadjacent-but-near", "non-edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                              " has leaf distance <= " + std::to_string(k),
                  {e.first, e.second});
    return v;
}

Verdict verify_labeled_leaf_root(const LabeledGraph& lg, const LeafRootTree& t, int K) {
    Verdict v;
    const Graph& g = lg.graph();
    int n = g.vertex_count();
    if (!check_leaf_map(t, n, v)) return v;
    std::map<Edge, int> near;
    for (auto& p : close_leaf_pairs(t, K)) near[{p.a, p.b}] = p.d;
    for (int i = 0; i < g.edge_count(); ++i) {
        auto e = g.edges()[i];
        auto r = lg.ranges()[i];
        auto it = near.find(e);
        if (it == near.end() || !r.contains(it->second)) {
            std::string d = it == near.end() ? ">" + std::to_string(K) : std::to_string(it->second);
            v.add("out-of-range", "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                      " has leaf distance " + d + " outside [" + std::to_string(r.lo) + "," +
                                      std::to_string(r.hi) + "]",
                  {e.first, e.second});
        }
    }
    for (auto& [e, d] : near)
        if (!g.has_edge(e.first, e.second))
            v.add("nonadjacent-but-near", "non-edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                              " has leaf distance " + std::to_string(d),
                  {e.first, e.second});
    return v;
}

LeafRootTree subdivide_leaf_edges(const LeafRootTree& t) {
    LeafRootTree out = t;
    for (int x = 0; x < t.node_count(); ++x) {
        if (t.leaf_map[x] < 0) continue;
        int m = out.node_count();
        out.parent.push_back(t.parent[x]);
        out.leaf_map.push_back(-1);
        out.parent[x] = m;
    }
    return out;
}

LeafRootTree prune_leaf_root(const LeafRootTree& t, int k) {
    int n = t.node_count();
    auto adj = t.adjacency();
    auto leaves = t.leaves();
    if (leaves.size() < 2) return t;
    std::vector<char> keep_edge(n, 0);  // edge (x, parent[x]) indexed by x
    std::vector<int> d(n, -1), from(n, -1);
    for (int s : leaves) {
        std::vector<int> touched{s};
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (v != s && t.leaf_map[v] >= 0) {
                for (int x = v; x != s; x = from[x]) {
                    int y = from[x];
                    keep_edge[t.parent[x] == y ? x : y] = 1;
                }
            }
            if (d[v] == k) continue;
            for (int u : adj[v])
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    from[u] = v;
                    touched.push_back(u);
                    q.push_back(u);
                }
        }
        for (int v : touched) d[v] = from[v] = -1;
    }
    std::vector<char> keep_node(n, 0);
    std::vector<Edge> kept;
    for (int x = 0; x < n; ++x)
        if (keep_edge[x]) {
            keep_node[x] = keep_node[t.parent[x]] = 1;
            kept.emplace_back(x, t.parent[x]);
        }
    for (int s : leaves)
        if (!keep_node[s]) return t;  // some leaf has no close partner: leave the tree alone
    std::vector<int> id(n, -1);
    int m = 0;
    for (int x = 0; x < n; ++x)
        if (keep_node[x]) id[x] = m++;
    if (static_cast<int>(kept.size()) != m - 1) return t;  // pruned part is disconnected
    std::vector<Edge> es;
    std::vector<int> deg(m, 0);
    for (auto [a, b] : kept) {
        es.emplace_back(id[a], id[b]);
        ++deg[id[a]];
        ++deg[id[b]];
    }
    int root = 0;
    if (m >= 3)
        while (deg[root] < 2) ++root;
    std::vector<int> lm(m, -1);
    for (int x = 0; x < n; ++x)
        if (keep_node[x] && t.leaf_map[x] >= 0) lm[id[x]] = t.leaf_map[x];
    try {
        return LeafRootTree::from_edges(m, es, root, lm);
    } catch (const invalid_input&) {
        return t;
    }
}

namespace {

// Labels following the closest-leaf rule for a tree rooted at t.root.
std::vector<int> closest_leaf_labels(const LeafRootTree& t, const std::vector<std::vector<int>>& adj,
                                     const std::vector<std::vector<int>>& leaf_dist,
                                     const std::vector<int>& leaf_vertex) {
    int n = t.node_count();
    std::vector<int> order{t.root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int u : adj[order[i]])
            if (u != t.root && t.parent[u] == order[i]) order.push_back(u);
    std::vector<int> label(n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        if (t.leaf_map[x] >= 0) {
            label[x] = t.leaf_map[x];
            continue;
        }
        int best = -1;
        for (size_t i = 0; i < leaf_vertex.size(); ++i) {
            int dd = leaf_dist[i][x];
            if (dd >= 0 && (best < 0 || dd < best)) best = dd;
        }
        int pick = -1;
        for (int c : adj[x]) {
            if (c == t.root || t.parent[c] != x) continue;
            int l = label[c];
            size_t li = std::lower_bound(leaf_vertex.begin(), leaf_vertex.end(), l) - leaf_vertex.begin();
            if (leaf_dist[li][x] == best && (pick < 0 || l < pick)) pick = l;
        }
        if (pick < 0)
            for (size_t i = 0; i < leaf_vertex.size(); ++i)
                if (leaf_dist[i][x] == best) {
                    pick = leaf_vertex[i];
                    break;
                }
        label[x] = pick;
    }
    return label;
}

// Labels following the closest-descendant-leaf rule.
std::vector<int> descendant_leaf_labels(const LeafRootTree& t, const std::vector<std::vector<int>>& adj) {
    int n = t.node_count();
    std::vector<int> order{t.root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int u : adj[order[i]])
            if (u != t.root && t.parent[u] == order[i]) order.push_back(u);
    std::vector<int> label(n, -1), h(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        if (t.leaf_map[x] >= 0) {
            label[x] = t.leaf_map[x];
            continue;
        }
        int bh = -1, bl = -1;
        for (int c : adj[x]) {
            if (c == t.root || t.parent[c] != x) continue;
            if (label[c] < 0) continue;
            if (bh < 0 || h[c] < bh || (h[c] == bh && label[c] < bl)) {
                bh = h[c];
                bl = label[c];
            }
        }
        label[x] = bl;
        h[x] = bh + 1;
    }
    return label;
}

LeafRootTree reroot(const LeafRootTree& t, int r) {
    std::vector<Edge> es;
    for (int x = 0; x < t.node_count(); ++x)
        if (t.parent[x] != x) es.emplace_back(x, t.parent[x]);
    return LeafRootTree::from_edges(t.node_count(), es, r, t.leaf_map);
}

} // namespace

std::vector<int> nearest_leaf_labeling(const LeafRootTree& t) {
    auto adj = t.adjacency();
    std::vector<int> leaf_vertex;
    std::vector<int> leaf_node;
    for (int x = 0; x < t.node_count(); ++x)
        if (t.leaf_map[x] >= 0) leaf_vertex.push_back(t.leaf_map[x]);
    std::sort(leaf_vertex.begin(), leaf_vertex.end());
    auto lov = t.leaf_of_vertex(leaf_vertex.empty() ? 0 : leaf_vertex.back() + 1);
    std::vector<std::vector<int>> dist;
    for (int v : leaf_vertex) dist.push_back(tree_distances(t, lov[v]));
    return closest_leaf_labels(t, adj, dist, leaf_vertex);
}

ProductSubtree embed_in_product(const Graph& g, const LeafRootTree& t0, int k, const ProductGraph& p,
                                EmbedOptions opt) {
    if (g.vertex_count() < 3) throw invalid_input("embed_in_product: graph has fewer than 3 vertices");
    if (!is_connected(g)) throw invalid_input("embed_in_product: graph is not connected");
    if (p.cycle_length() != k || p.base_vertex_count() != g.vertex_count())
        throw invalid_input("embed_in_product: product does not match graph and k");
    if (auto v = verify_leaf_root(g, t0, k); !v.ok())
        throw invalid_input("embed_in_product: witness does not verify: " + v.summary());
    LeafRootTree t = opt.prune ? prune_leaf_root(t0, k) : t0;
    auto adj = t.adjacency();
    int n = t.node_count();
    std::vector<int> leaf_vertex;
    for (int x = 0; x < n; ++x)
        if (t.leaf_map[x] >= 0) leaf_vertex.push_back(t.leaf_map[x]);
    std::sort(leaf_vertex.begin(), leaf_vertex.end());
    auto lov = t.leaf_of_vertex(g.vertex_count());
    std::vector<std::vector<int>> dist;
    for (int v : leaf_vertex) dist.push_back(tree_distances(t, lov[v]));

    std::vector<int> roots{t.root};
    for (int x = 0; x < n; ++x)
        if (x != t.root && adj[x].size() >= 2) roots.push_back(x);

    auto attempt = [&](const LeafRootTree& rt, const std::vector<int>& label, ProductSubtree& out) {
        std::vector<int> depth(n, -1);
        depth[rt.root] = 0;
        std::vector<int> order{rt.root};
        for (size_t i = 0; i < order.size(); ++i)
            for (int u : adj[order[i]])
                if (depth[u] < 0) {
                    depth[u] = depth[order[i]] + 1;
                    order.push_back(u);
                }
        std::vector<int> image(n);
        std::vector<char> used(p.vertex_count(), 0);
        for (int x = 0; x < n; ++x) {
            if (label[x] < 0) return false;
            image[x] = p.id(label[x], depth[x] % k);
            if (used[image[x]]) return false;
            used[image[x]] = 1;
        }
        std::vector<Edge> es;
        for (int x = 0; x < n; ++x) {
            if (rt.parent[x] == x) continue;
            int a = image[x], b = image[rt.parent[x]];
            if (!p.has_edge(a, b)) return false;
            es.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(es.begin(), es.end());
        out.product = &p;
        out.edge_set = std::move(es);
        out.image = std::move(image);
        out.leaf_of_level.assign(g.vertex_count(), -1);
        for (int x = 0; x < n; ++x)
            if (t.leaf_map[x] >= 0) out.leaf_of_level[t.leaf_map[x]] = out.image[x];
        return true;
    };

    ProductSubtree out;
    for (int r : roots) {
        auto rt = reroot(t, r);
        if (attempt(rt, closest_leaf_labels(rt, adj, dist, leaf_vertex), out)) return out;
    }
    for (int r : roots) {
        auto rt = reroot(t, r);
        if (attempt(rt, descendant_leaf_labels(rt, adj), out)) return out;
    }
    throw invalid_input("embed_in_product: no root yields an injective embedding (witness not pruned?)");
}

std::vector<int> subset_distances(int vertex_count, const std::vector<Edge>& s, int from, int cap) {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [a, b] : s) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> d(vertex_count, -1);
    d[from] = 0;
    std::deque<int> q{from};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (d[v] == cap) continue;
        for (int u : adj[v])
            if (d[u] < 0) {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
    }
    return d;
}

namespace {

struct SubtreeFacts {
    std::vector<int> rep;  // per level, -1 if not exactly one
};

SubtreeFacts common_checks(const ProductGraph& p, const std::vector<Edge>& s, Verdict& v) {
    int N = p.vertex_count();
    std::vector<int> uf(N);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::vector<int> deg(N, 0);
    for (auto [a, b] : s) {
        if (!p.has_edge(a, b)) {
            v.add("not-product-edge", "pair " + std::to_string(a) + "-" + std::to_string(b) + " is not a product edge",
                  {a, b});
            continue;
        }
        ++deg[a];
        ++deg[b];
        int ra = find(a), rb = find(b);
        if (ra == rb)
            v.add("cycle", "edge " + std::to_string(a) + "-" + std::to_string(b) + " closes a cycle", {a, b});
        else
            uf[ra] = rb;
    }
    SubtreeFacts f;
    int n = p.base_vertex_count(), k = p.cycle_length();
    f.rep.assign(n, -1);
    for (int u = 0; u < n; ++u) {
        std::vector<int> leaves;
        for (int r = 0; r < k; ++r)
            if (deg[p.id(u, r)] == 1) leaves.push_back(p.id(u, r));
        if (leaves.size() == 1)
            f.rep[u] = leaves[0];
        else
            v.add("level-leaf-count", "level " + std::to_string(u) + " has " + std::to_string(leaves.size()) +
                                          " leaves instead of one",
                  {u});
    }
    return f;
}

} // namespace

Verdict check_product_subtree(const ProductGraph& p, const std::vector<Edge>& s, int k) {
    Verdict v;
    auto f = common_checks(p, s, v);
    int n = p.base_vertex_count();
    for (int u = 0; u < n; ++u) {
        std::vector<int> d;
        if (f.rep[u] >= 0) d = subset_distances(p.vertex_count(), s, f.rep[u], k);
        for (int w = u + 1; w < n; ++w) {
            bool near = f.rep[u] >= 0 && f.rep[w] >= 0 && d[f.rep[w]] > 0;
            if (near != p.adjacent_levels(u, w))
                v.add("adjacency-mismatch", "levels " + std::to_string(u) + "," + std::to_string(w) +
                                                (near ? " are close but not adjacent" : " are adjacent but not close"),
                      {u, w});
        }
    }
    return v;
}

Verdict check_labeled_product_subtree(const ProductGraph& p, const std::vector<Edge>& s, int K) {
    Verdict v;
    if (!p.labeled()) {
        v.add("unlabeled-product", "product was not built from a labeled graph");
        return v;
    }
    auto f = common_checks(p, s, v);
    int n = p.base_vertex_count();
    const Graph& g = p.base_graph();
    std::vector<Range> base_range(g.edge_count());
    for (size_t i = 0; i < p.edges().size(); ++i) {
        auto& e = p.edges()[i];
        if (e.color == EdgeColor::horizontal) continue;
        base_range[g.edge_index(p.base(e.a), p.base(e.b))] = *p.inherited_range(static_cast<int>(i));
    }
    for (int u = 0; u < n; ++u) {
        std::vector<int> d;
        if (f.rep[u] >= 0) d = subset_distances(p.vertex_count(), s, f.rep[u], K);
        for (int w = u + 1; w < n; ++w) {
            int dist = (f.rep[u] >= 0 && f.rep[w] >= 0) ? d[f.rep[w]] : -1;
            if (g.has_edge(u, w)) {
                auto r = base_range[g.edge_index(u, w)];
                if (dist <= 0 || !r.contains(dist))
                    v.add("out-of-range", "levels " + std::to_string(u) + "," + std::to_string(w) +
                                              " are not at a distance in [" + std::to_string(r.lo) + "," +
                                              std::to_string(r.hi) + "]",
                          {u, w});
            } else if (dist > 0) {
                v.add("nonadjacent-near", "levels " + std::to_string(u) + "," + std::to_string(w) +
                                              " are within " + std::to_string(K) + " but not adjacent",
                      {u, w});
            }
        }
    }
    return v;
}

} // namespace leafpower
