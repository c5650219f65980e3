#include "leafpower/reference.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "leafpower/errors.hpp"
#include "leafpower/io.hpp"

namespace leafpower::reference {

std::vector<int> TreeShape::leaves() const {
    std::vector<int> deg(n, 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) out.push_back(v);
    return out;
}

namespace {

// Level sequences of rooted trees (Wright, Richmond, Odlyzko, McKay).
std::optional<std::vector<int>> next_rooted_tree(const std::vector<int>& pred, int p = -1) {
    if (p < 0) {
        p = static_cast<int>(pred.size()) - 1;
        while (pred[p] == 1) --p;
    }
    if (p == 0) return std::nullopt;
    int q = p - 1;
    while (pred[q] != pred[p] - 1) --q;
    std::vector<int> r = pred;
    for (size_t i = p; i < r.size(); ++i) r[i] = r[i - p + q];
    return r;
}

std::pair<std::vector<int>, std::vector<int>> split_tree(const std::vector<int>& layout) {
    bool one_found = false;
    size_t m = layout.size();
    for (size_t i = 0; i < layout.size(); ++i)
        if (layout[i] == 1) {
            if (one_found) {
                m = i;
                break;
            }
            one_found = true;
        }
    std::vector<int> left, rest{0};
    for (size_t i = 1; i < m; ++i) left.push_back(layout[i] - 1);
    for (size_t i = m; i < layout.size(); ++i) rest.push_back(layout[i]);
    return {left, rest};
}

std::optional<std::vector<int>> next_tree(const std::vector<int>& cand) {
    auto [left, rest] = split_tree(cand);
    int lh = *std::max_element(left.begin(), left.end());
    int rh = *std::max_element(rest.begin(), rest.end());
    bool valid = rh >= lh;
    if (valid && rh == lh) {
        if (left.size() > rest.size())
            valid = false;
        else if (left.size() == rest.size() && left > rest)
            valid = false;
    }
    if (valid) return cand;
    int p = static_cast<int>(left.size());
    auto nc = next_rooted_tree(cand, p);
    if (!nc) return std::nullopt;
    if (cand[p] > 2) {
        auto [nl, nr] = split_tree(*nc);
        int nlh = *std::max_element(nl.begin(), nl.end());
        int len = nlh + 1;
        for (int i = 0; i < len; ++i) (*nc)[nc->size() - len + i] = i + 1;
    }
    return nc;
}

TreeShape layout_to_tree(const std::vector<int>& layout) {
    TreeShape t;
    t.n = static_cast<int>(layout.size());
    std::vector<int> stack;
    for (int i = 0; i < t.n; ++i) {
        if (!stack.empty()) {
            while (layout[stack.back()] >= layout[i]) stack.pop_back();
            t.edges.emplace_back(stack.back(), i);
        }
        stack.push_back(i);
    }
    return t;
}

std::map<int, std::vector<TreeShape>>& tree_cache() {
    static std::map<int, std::vector<TreeShape>> cache;
    return cache;
}

std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
    std::vector<std::string> kids;
    for (int u : adj[v])
        if (u != parent) kids.push_back(rooted_code(adj, u, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    return s + ")";
}

} // namespace

std::vector<TreeShape> free_trees(int n) {
    if (n < 1) throw invalid_parameter("tree order must be positive");
    if (n > 18) throw size_limit("tree enumeration is limited to 18 vertices");
    auto& cache = tree_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<TreeShape> out;
    if (n == 1) {
        out.push_back(TreeShape{1, {}});
    } else {
        std::vector<int> layout;
        for (int i = 0; i <= n / 2; ++i) layout.push_back(i);
        for (int i = 1; i < (n + 1) / 2; ++i) layout.push_back(i);
        std::optional<std::vector<int>> cur = layout;
        while (cur) {
            cur = next_tree(*cur);
            if (!cur) break;
            out.push_back(layout_to_tree(*cur));
            cur = next_rooted_tree(*cur);
        }
    }
    cache[n] = out;
    return out;
}

void for_each_tree(int max_vertices, int leaf_count, const std::function<void(const TreeShape&)>& fn) {
    if (max_vertices > 18) throw size_limit("tree enumeration is limited to 18 vertices");
    for (int n = 1; n <= max_vertices; ++n) {
        // a tree with l >= 3 leaves has at least l + 1 vertices
        if (leaf_count >= 3 && n < leaf_count + 1) continue;
        for (auto& t : free_trees(n))
            if (static_cast<int>(t.leaves().size()) == leaf_count) fn(t);
    }
}

std::vector<TreeShape> enumerate_trees(int max_vertices, int leaf_count) {
    std::vector<TreeShape> out;
    for_each_tree(max_vertices, leaf_count, [&](const TreeShape& t) { out.push_back(t); });
    return out;
}

std::string tree_canonical_form(const TreeShape& t) {
    if (t.n == 1) return "()";
    std::vector<std::vector<int>> adj(t.n);
    std::vector<int> deg(t.n, 0);
    for (auto [a, b] : t.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++deg[a];
        ++deg[b];
    }
    // peel leaves to find the centre
    std::vector<int> layer;
    for (int v = 0; v < t.n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int left = t.n;
    while (left > 2) {
        std::vector<int> next;
        left -= static_cast<int>(layer.size());
        for (int v : layer)
            for (int u : adj[v])
                if (--deg[u] == 1) next.push_back(u);
        layer = next;
    }
    std::string best;
    for (int c : layer) {
        std::string s = rooted_code(adj, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::vector<long> tree_counts_by_pruefer(int n) {
    if (n < 2 || n > 9) throw invalid_parameter("Pruefer cross-check supports 2..9 vertices");
    std::set<std::string> seen;
    std::vector<long> counts(n + 1, 0);
    std::vector<int> code(n - 2, 0);
    while (true) {
        std::vector<int> deg(n, 1);
        for (int x : code) ++deg[x];
        TreeShape t;
        t.n = n;
        std::vector<int> d = deg;
        for (int x : code) {
            int leaf = 0;
            while (d[leaf] != 1) ++leaf;
            t.edges.emplace_back(leaf, x);
            --d[leaf];
            --d[x];
        }
        int a = -1, b = -1;
        for (int v = 0; v < n; ++v)
            if (d[v] == 1) (a < 0 ? a : b) = v;
        t.edges.emplace_back(a, b);
        if (seen.insert(tree_canonical_form(t)).second) ++counts[t.leaves().size()];
        int i = 0;
        while (i < n - 2 && ++code[i] == n) code[i++] = 0;
        if (i == n - 2) break;
    }
    return counts;
}

const char* to_string(Answer a) {
    switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::no_within_budget: return "no-within-budget";
    }
    return "?";
}

namespace {

// Distinct capped leaf-distance matrices of all trees within a budget.
struct Realization {
    TreeShape shape;
    std::vector<int> leaves;
    std::vector<uint8_t> d;          // leaves x leaves, capped at cap + 1
    std::vector<int> near_sorted;    // per leaf: other leaves within cap, sorted
};

const std::vector<Realization>& realizations(int leaf_count, int cap, int budget) {
    static std::map<std::tuple<int, int, int>, std::vector<Realization>> cache;
    auto key = std::make_tuple(leaf_count, cap, budget);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Realization> out;
    std::set<std::vector<uint8_t>> seen;
    for_each_tree(budget, leaf_count, [&](const TreeShape& t) {
        Realization r;
        r.leaves = t.leaves();
        int L = static_cast<int>(r.leaves.size());
        std::vector<std::vector<int>> adj(t.n);
        for (auto [a, b] : t.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        r.d.assign(L * L, 0);
        for (int i = 0; i < L; ++i) {
            std::vector<int> dist(t.n, -1);
            std::vector<int> q{r.leaves[i]};
            dist[r.leaves[i]] = 0;
            for (size_t h = 0; h < q.size(); ++h)
                for (int u : adj[q[h]])
                    if (dist[u] < 0) {
                        dist[u] = dist[q[h]] + 1;
                        q.push_back(u);
                    }
            for (int j = 0; j < L; ++j) r.d[i * L + j] = static_cast<uint8_t>(std::min(dist[r.leaves[j]], cap + 1));
        }
        if (!seen.insert(r.d).second) return;
        std::vector<int> near(L, 0);
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j)
                if (i != j && r.d[i * L + j] <= cap) ++near[i];
        r.near_sorted = near;
        std::sort(r.near_sorted.begin(), r.near_sorted.end());
        r.shape = t;
        out.push_back(std::move(r));
    });
    return cache[key] = std::move(out);
}

LeafRootTree to_leaf_root(const Realization& r, const std::vector<int>& vertex_of_leaf) {
    std::vector<int> lm(r.shape.n, -1);
    for (size_t i = 0; i < r.leaves.size(); ++i) lm[r.leaves[i]] = vertex_of_leaf[i];
    std::vector<int> deg(r.shape.n, 0);
    for (auto [a, b] : r.shape.edges) {
        ++deg[a];
        ++deg[b];
    }
    int root = 0;
    for (int v = 0; v < r.shape.n; ++v)
        if (deg[v] >= 2) {
            root = v;
            break;
        }
    return LeafRootTree::from_edges(r.shape.n, r.shape.edges, root, lm);
}

// pair_ok(u, v, capped distance) decides a single pair.
BruteResult search(const Graph& g, int cap, int budget, const std::function<bool(int, int, int)>& pair_ok) {
    int n = g.vertex_count();
    if (budget < n) throw invalid_parameter("vertex budget is smaller than the vertex count");
    BruteResult res;
    if (n == 0) {
        res.answer = Answer::yes;
        return res;
    }
    std::vector<int> near(n);
    for (int v = 0; v < n; ++v) near[v] = g.degree(v);
    std::vector<int> near_sorted = near;
    std::sort(near_sorted.begin(), near_sorted.end());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return near[a] > near[b]; });
    for (const auto& r : realizations(n, cap, budget)) {
        ++res.shapes_tried;
        if (r.near_sorted != near_sorted) continue;
        int L = n;
        std::vector<int> leaf_near(L, 0);
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j)
                if (i != j && r.d[i * L + j] <= cap) ++leaf_near[i];
        std::vector<int> leaf_of(n, -1);
        std::vector<char> used(L, 0);
        std::function<bool(int)> go = [&](int idx) {
            if (idx == n) return true;
            int v = order[idx];
            for (int i = 0; i < L; ++i) {
                if (used[i] || leaf_near[i] != near[v]) continue;
                bool ok = true;
                for (int j = 0; j < idx && ok; ++j) {
                    int u = order[j];
                    ok = pair_ok(v, u, r.d[i * L + leaf_of[u]]);
                }
                if (!ok) continue;
                used[i] = 1;
                leaf_of[v] = i;
                if (go(idx + 1)) return true;
                used[i] = 0;
                leaf_of[v] = -1;
            }
            return false;
        };
        if (go(0)) {
            std::vector<int> vertex_of_leaf(L);
            for (int v = 0; v < n; ++v) vertex_of_leaf[leaf_of[v]] = v;
            res.answer = Answer::yes;
            res.witness = to_leaf_root(r, vertex_of_leaf);
            return res;
        }
    }
    if (is_connected(g)) {
        res.answer = budget >= n * cap ? Answer::no : Answer::no_within_budget;
        return res;
    }
    // induced subgraphs of leaf powers are leaf powers, so one rejected component settles it
    res.answer = Answer::no_within_budget;
    for (const auto& comp : connected_components(g)) {
        BruteResult part = search(g.induced(comp), cap, budget, [&](int u, int v, int d) {
            return pair_ok(comp[u], comp[v], d);
        });
        res.shapes_tried += part.shapes_tried;
        if (part.answer == Answer::no) {
            res.answer = Answer::no;
            break;
        }
    }
    return res;
}

} // namespace

BruteResult brute_force_recognize(const Graph& g, int k, int vertex_budget) {
    if (k < 2) throw invalid_parameter("k must be at least 2");
    return search(g, k, vertex_budget, [&](int u, int v, int d) { return g.has_edge(u, v) == (d <= k); });
}

BruteResult brute_force_recognize_labeled(const LabeledGraph& g, int K, int vertex_budget) {
    if (K < 2) throw invalid_parameter("K must be at least 2");
    const Graph& h = g.graph();
    return search(h, K, vertex_budget, [&](int u, int v, int d) {
        if (!h.has_edge(u, v)) return d > K;
        return g.range(u, v).contains(d);
    });
}

bool recognize_k2(const Graph& g) {
    for (auto& c : connected_components(g)) {
        long s = static_cast<long>(c.size());
        long m = 0;
        for (int v : c) m += g.degree(v);
        if (m != s * (s - 1)) return false;
    }
    return true;
}

std::vector<int> lex_bfs(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> label(n);
    std::vector<char> done(n, 0);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (best < 0 || label[v] > label[best])) best = v;
        done[best] = 1;
        order.push_back(best);
        for (int u : g.neighbors(best))
            if (!done[u]) label[u].push_back(n - step);
    }
    return order;
}

bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order) {
    int n = g.vertex_count();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int v : order) {
        int first = -1;
        for (int u : g.neighbors(v))
            if (pos[u] > pos[v] && (first < 0 || pos[u] < pos[first])) first = u;
        if (first < 0) continue;
        for (int u : g.neighbors(v))
            if (pos[u] > pos[v] && u != first && !g.has_edge(u, first)) return false;
    }
    return true;
}

bool is_chordal(const Graph& g) {
    auto order = lex_bfs(g);
    std::reverse(order.begin(), order.end());
    return is_perfect_elimination_order(g, order);
}

bool contains_induced(const Graph& g, const Graph& pattern) {
    int p = pattern.vertex_count(), n = g.vertex_count();
    if (p > 6) throw size_limit("induced pattern search is limited to 6 vertices");
    if (p > n) return false;
    std::vector<int> pdeg;
    for (int v = 0; v < p; ++v) pdeg.push_back(pattern.degree(v));
    std::sort(pdeg.begin(), pdeg.end());
    std::vector<int> pick(p);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        // degree filter inside the subset
        std::vector<int> deg(p, 0);
        int m = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (g.has_edge(pick[i], pick[j])) {
                    ++deg[i];
                    ++deg[j];
                    ++m;
                }
        if (m == pattern.edge_count()) {
            auto sd = deg;
            std::sort(sd.begin(), sd.end());
            if (sd == pdeg) {
                std::vector<int> perm(p);
                std::iota(perm.begin(), perm.end(), 0);
                do {
                    bool ok = true;
                    for (int i = 0; i < p && ok; ++i)
                        for (int j = i + 1; j < p && ok; ++j)
                            ok = g.has_edge(pick[perm[i]], pick[perm[j]]) == pattern.has_edge(i, j);
                    if (ok) return true;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
        int i = p - 1;
        while (i >= 0 && pick[i] == n - p + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
    }
    return false;
}

bool recognize_k3(const Graph& g) {
    return is_chordal(g) && !contains_induced(g, graphs::bull()) && !contains_induced(g, graphs::dart()) &&
           !contains_induced(g, graphs::gem());
}

namespace {

// Values on the pairs i<j in lexicographic pair order, under all vertex permutations.
std::vector<int> canonical_pairs(const std::vector<int>& val, int n) {
    std::vector<int> idx(n * n, 0);
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) idx[i * n + j] = idx[j * n + i] = c++;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<int> cur;
        cur.reserve(val.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) cur.push_back(val[idx[perm[i] * n + perm[j]]]);
        if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

std::vector<Graph> connected_graphs(int n) {
    if (n < 1 || n > 6) throw size_limit("graph enumeration supports 1..6 vertices");
    int P = n * (n - 1) / 2;
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<std::vector<int>> seen;
    std::vector<Graph> out;
    for (long mask = 0; mask < (1L << P); ++mask) {
        std::vector<Edge> es;
        std::vector<int> val(P);
        for (int b = 0; b < P; ++b)
            if (mask >> b & 1) {
                es.push_back(pairs[b]);
                val[b] = 1;
            }
        if (static_cast<int>(es.size()) < n - 1) continue;
        Graph g(n, es);
        if (!is_connected(g)) continue;
        if (seen.insert(canonical_pairs(val, n)).second) out.push_back(g);
    }
    return out;
}

std::vector<LabeledGraph> labeled_graphs(int n, int K) {
    if (n < 1 || n > 4) throw size_limit("labeled graph enumeration supports 1..4 vertices");
    std::vector<Range> options;
    for (int lo = 2; lo <= K; ++lo)
        for (int hi = lo; hi <= K; ++hi) options.push_back(Range{lo, hi});
    int P = n * (n - 1) / 2, V = static_cast<int>(options.size()) + 1;
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<std::vector<int>> seen;
    std::vector<LabeledGraph> out;
    std::vector<int> val(P, 0);
    while (true) {
        if (seen.insert(canonical_pairs(val, n)).second) {
            std::vector<Edge> es;
            for (int b = 0; b < P; ++b)
                if (val[b]) es.push_back(pairs[b]);
            Graph g(n, es);
            std::vector<Range> rs;
            for (auto& e : g.edges())
                for (int b = 0; b < P; ++b)
                    if (pairs[b] == e) rs.push_back(options[val[b] - 1]);
            out.emplace_back(g, rs, K);
        }
        int i = 0;
        while (i < P && ++val[i] == V) val[i++] = 0;
        if (i == P) break;
    }
    return out;
}

InstanceBundle random_leaf_power_instance(int n_leaves, int k, uint64_t seed, bool labeled) {
    if (n_leaves < 1) throw invalid_parameter("n_leaves must be at least 1");
    if (k < 2) throw invalid_parameter("k must be at least 2");
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int m = uniform(1, std::min(n_leaves * (k - 1), n_leaves + k - 2));
    // random recursive tree on the interior nodes
    std::vector<Edge> inner;
    for (int i = 1; i < m; ++i) inner.emplace_back(uniform(0, i - 1), i);
    std::vector<char> alive(m, 1);
    auto interior_leaves = [&] {
        std::vector<int> deg(m, 0);
        for (auto [a, b] : inner)
            if (alive[a] && alive[b]) {
                ++deg[a];
                ++deg[b];
            }
        std::vector<int> out;
        for (int v = 0; v < m; ++v)
            if (alive[v] && deg[v] <= 1) out.push_back(v);
        return out;
    };
    for (auto il = interior_leaves(); static_cast<int>(il.size()) > n_leaves; il = interior_leaves())
        alive[il[uniform(0, static_cast<int>(il.size()) - 1)]] = 0;
    std::vector<int> id(m, -1), kept;
    for (int v = 0; v < m; ++v)
        if (alive[v]) {
            id[v] = static_cast<int>(kept.size());
            kept.push_back(v);
        }
    int M = static_cast<int>(kept.size());
    std::vector<Edge> es;
    for (auto [a, b] : inner)
        if (alive[a] && alive[b]) es.emplace_back(id[a], id[b]);
    std::vector<int> hosts;
    for (int v : interior_leaves()) hosts.push_back(id[v]);
    while (static_cast<int>(hosts.size()) < n_leaves) hosts.push_back(uniform(0, M - 1));
    std::vector<int> vertex(n_leaves);
    std::iota(vertex.begin(), vertex.end(), 0);
    std::shuffle(vertex.begin(), vertex.end(), rng);
    std::vector<int> lm(M, -1);
    for (int i = 0; i < n_leaves; ++i) {
        es.emplace_back(hosts[i], M + i);
        lm.push_back(vertex[i]);
    }
    int N = M + n_leaves;
    int root = 0;
    {
        std::vector<int> deg(N, 0);
        for (auto [a, b] : es) {
            ++deg[a];
            ++deg[b];
        }
        std::vector<int> inner_nodes;
        for (int v = 0; v < M; ++v)
            if (deg[v] >= 2) inner_nodes.push_back(v);
        if (!inner_nodes.empty()) root = inner_nodes[uniform(0, static_cast<int>(inner_nodes.size()) - 1)];
    }
    InstanceBundle b;
    b.k = k;
    b.seed = seed;
    b.witness = LeafRootTree::from_edges(N, es, root, lm);
    b.graph = leaf_power_of(b.witness, k);
    if (labeled) b.labeled = labeled_leaf_power_of(b.witness, k);
    return b;
}

InstanceBundle caterpillar_instance(int n, uint64_t seed) {
    if (n < 1) throw invalid_parameter("n must be positive");
    std::mt19937_64 rng(seed);
    std::vector<int> t;
    int placed = 0;
    while (placed < n) {
        int c = std::uniform_int_distribution<int>(1, 2)(rng);
        int sz = static_cast<int>(t.size());
        int room = 4 - (sz >= 1 ? t[sz - 1] : 0) - (sz >= 2 ? t[sz - 2] : 0);
        c = std::min({c, room, n - placed});
        t.push_back(c);
        placed += c;
    }
    int spine = static_cast<int>(t.size());
    std::vector<Edge> es;
    std::vector<int> lm(spine, -1);
    for (int i = 0; i + 1 < spine; ++i) es.emplace_back(i, i + 1);
    int node = spine, v = 0;
    for (int i = 0; i < spine; ++i)
        for (int j = 0; j < t[i]; ++j) {
            es.emplace_back(i, node++);
            lm.push_back(v++);
        }
    InstanceBundle b;
    b.k = 4;
    b.seed = seed;
    b.witness = LeafRootTree::from_edges(node, es, 0, lm);
    b.graph = leaf_power_of(b.witness, 4);
    return b;
}

void write_bundle(const std::string& dir, const InstanceBundle& b) {
    std::filesystem::create_directories(dir);
    write_text_file(dir + "/graph.gr", b.labeled ? write_graph_file(*b.labeled) : write_graph_file(b.graph));
    write_text_file(dir + "/witness.tree", write_witness(b.witness, b.graph));
    std::ostringstream meta;
    meta << "k=" << b.k << "\nseed=" << b.seed << "\nlabeled=" << (b.labeled ? 1 : 0) << '\n';
    write_text_file(dir + "/meta.txt", meta.str());
}

InstanceBundle read_bundle(const std::string& dir) {
    InstanceBundle b;
    std::istringstream meta(read_text_file(dir + "/meta.txt"));
    std::string line;
    bool labeled = false;
    while (std::getline(meta, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "k") b.k = std::stoi(val);
        if (key == "seed") b.seed = std::stoull(val);
        if (key == "labeled") labeled = val == "1";
    }
    GraphFile f = read_graph_file(dir + "/graph.gr");
    b.graph = f.graph;
    if (labeled) b.labeled = f.as_labeled(b.k);
    b.witness = parse_witness(read_text_file(dir + "/witness.tree"), b.graph);
    return b;
}

} // namespace leafpower::reference
