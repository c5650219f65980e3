#include "leafpower/treedecomp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "leafpower/errors.hpp"

namespace leafpower {

int TreeDecomposition::width() const {
    int w = 0;
    for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
    std::vector<std::vector<int>> ch(bags.size());
    for (int i = 0; i < bag_count(); ++i)
        if (parent[i] >= 0) ch[parent[i]].push_back(i);
    return ch;
}

std::vector<int> TreeDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    auto ch = children();
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < ch[x].size()) {
            int c = ch[x][i++];
            stack.push_back({c, 0});
        } else {
            out.push_back(x);
            stack.pop_back();
        }
    }
    return out;
}

namespace {

bool sorted_contains(const std::vector<int>& a, int x) { return std::binary_search(a.begin(), a.end(), x); }

void sorted_insert(std::vector<int>& a, int x) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    if (it == a.end() || *it != x) a.insert(it, x);
}

void sorted_erase(std::vector<int>& a, int x) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    if (it != a.end() && *it == x) a.erase(it);
}

std::vector<int> min_fill_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
    auto fill_of = [&](int v) {
        long f = 0;
        auto& a = adj[v];
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = i + 1; j < a.size(); ++j)
                if (!sorted_contains(adj[a[i]], a[j])) ++f;
        return f;
    };
    using Key = std::tuple<long, int, int>;
    std::set<Key> queue;
    std::vector<Key> key(n);
    for (int v = 0; v < n; ++v) {
        key[v] = {fill_of(v), static_cast<int>(adj[v].size()), v};
        queue.insert(key[v]);
    }
    std::vector<int> order;
    std::vector<char> gone(n, 0);
    while (!queue.empty()) {
        int v = std::get<2>(*queue.begin());
        queue.erase(queue.begin());
        gone[v] = 1;
        order.push_back(v);
        auto nb = adj[v];
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!sorted_contains(adj[nb[i]], nb[j])) {
                    sorted_insert(adj[nb[i]], nb[j]);
                    sorted_insert(adj[nb[j]], nb[i]);
                }
        for (int u : nb) sorted_erase(adj[u], v);
        adj[v].clear();
        std::set<int> dirty(nb.begin(), nb.end());
        for (int u : nb)
            for (int w : adj[u]) dirty.insert(w);
        for (int u : dirty) {
            if (gone[u]) continue;
            queue.erase(key[u]);
            key[u] = {fill_of(u), static_cast<int>(adj[u].size()), u};
            queue.insert(key[u]);
        }
    }
    return order;
}

TreeDecomposition reroot(TreeDecomposition d, int r) {
    int m = d.bag_count();
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i)
        if (d.parent[i] >= 0) {
            adj[i].push_back(d.parent[i]);
            adj[d.parent[i]].push_back(i);
        }
    std::vector<int> par(m, -2);
    par[r] = -1;
    std::vector<int> stack{r};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (par[y] == -2) {
                par[y] = x;
                stack.push_back(y);
            }
    }
    d.parent = par;
    d.root = r;
    return d;
}

} // namespace

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    int n = g.vertex_count();
    TreeDecomposition d;
    if (n == 0) return d;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::vector<int>> higher(n);
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for (int v : order) {
        std::vector<int> up;
        for (int u : adj[v])
            if (pos[u] > pos[v]) up.push_back(u);
        for (size_t i = 0; i < up.size(); ++i)
            for (size_t j = i + 1; j < up.size(); ++j) {
                adj[up[i]].insert(up[j]);
                adj[up[j]].insert(up[i]);
            }
        higher[v] = up;
    }
    // bag i belongs to order[i]
    d.bags.resize(n);
    d.parent.assign(n, -1);
    int prev_root = -1;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        d.bags[i] = higher[v];
        d.bags[i].push_back(v);
        std::sort(d.bags[i].begin(), d.bags[i].end());
        int best = -1;
        for (int u : higher[v])
            if (best < 0 || pos[u] < best) best = pos[u];
        d.parent[i] = best;
    }
    // tie separate trees together through their roots
    for (int i = 0; i < n; ++i)
        if (d.parent[i] < 0) {
            if (prev_root >= 0) d.parent[prev_root] = i;
            prev_root = i;
        }
    d.root = prev_root;
    // contract bags contained in their parent
    std::vector<int> alias(n);
    for (int i = 0; i < n; ++i) alias[i] = i;
    std::function<int(int)> find = [&](int x) { return alias[x] == x ? x : alias[x] = find(alias[x]); };
    std::vector<char> dead(n, 0);
    for (int i = 0; i < n; ++i) {
        int p = d.parent[i];
        if (p < 0) continue;
        p = find(p);
        if (std::includes(d.bags[p].begin(), d.bags[p].end(), d.bags[i].begin(), d.bags[i].end())) {
            dead[i] = 1;
            alias[i] = p;
        }
    }
    std::vector<int> id(n, -1);
    TreeDecomposition out;
    for (int i = 0; i < n; ++i)
        if (!dead[i]) {
            id[i] = out.bag_count();
            out.bags.push_back(d.bags[i]);
        }
    out.parent.assign(out.bag_count(), -1);
    for (int i = 0; i < n; ++i) {
        if (dead[i] || d.parent[i] < 0) continue;
        out.parent[id[i]] = id[find(d.parent[i])];
    }
    out.root = id[find(d.root)];
    // root: smallest bag, then smallest id
    int r = 0;
    for (int i = 1; i < out.bag_count(); ++i)
        if (out.bags[i].size() < out.bags[r].size()) r = i;
    return reroot(std::move(out), r);
}

int exact_treewidth(const Graph& g, std::vector<int>* order) {
    int n = g.vertex_count();
    if (n > 12) throw size_limit("exact treewidth is limited to 12 vertices, got " + std::to_string(n));
    if (n == 0) {
        if (order) order->clear();
        return -1;
    }
    std::vector<unsigned> nb(n, 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    // |Q(S, v)|: vertices outside S+v reachable from v through S
    auto q = [&](unsigned S, int v) {
        unsigned seen = 1u << v, frontier = 1u << v, out = 0;
        while (frontier) {
            int x = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            unsigned nx = nb[x] & ~seen;
            seen |= nx;
            out |= nx & ~S;
            frontier |= nx & S;
        }
        return __builtin_popcount(out);
    };
    unsigned full = (1u << n) - 1;
    std::vector<int> tw(full + 1, 0), arg(full + 1, -1);
    tw[0] = -1;
    for (unsigned S = 1; S <= full; ++S) {
        int best = 1 << 30;
        for (int v = 0; v < n; ++v) {
            if (!(S >> v & 1)) continue;
            unsigned R = S & ~(1u << v);
            int val = std::max(tw[R], q(R, v));
            if (val < best) {
                best = val;
                arg[S] = v;
            }
        }
        tw[S] = best;
    }
    if (order) {
        order->clear();
        for (unsigned S = full; S; S &= ~(1u << arg[S])) order->push_back(arg[S]);
        std::reverse(order->begin(), order->end());
    }
    return tw[full];
}

TreeDecomposition decompose(const Graph& g, DecomposeStrategy s) {
    if (s == DecomposeStrategy::exact_small) {
        std::vector<int> order;
        exact_treewidth(g, &order);
        return decomposition_from_order(g, order);
    }
    return decomposition_from_order(g, min_fill_order(g));
}

Verdict validate_decomposition(const Graph& g, const TreeDecomposition& d) {
    Verdict v;
    int n = g.vertex_count(), m = d.bag_count();
    if (static_cast<int>(d.parent.size()) != m) {
        v.add("malformed", "parent array size mismatch");
        return v;
    }
    if (m == 0) {
        if (n > 0) v.add("vertex-missing", "no bags for a non-empty graph");
        return v;
    }
    // tree shape
    int roots = 0;
    for (int i = 0; i < m; ++i) {
        if (d.parent[i] < 0)
            ++roots;
        else if (d.parent[i] >= m)
            v.add("malformed", "parent out of range at bag " + std::to_string(i), {i});
    }
    if (roots != 1 || d.root < 0 || d.root >= m || d.parent[d.root] != -1) {
        v.add("malformed", "decomposition must have exactly one root");
        return v;
    }
    if (!v.ok()) return v;
    std::vector<int> state(m, 0);
    state[d.root] = 2;
    for (int i = 0; i < m; ++i) {
        std::vector<int> trail;
        int x = i;
        while (state[x] == 0) {
            state[x] = 1;
            trail.push_back(x);
            x = d.parent[x];
        }
        if (state[x] == 1) {
            v.add("malformed", "bag tree has a cycle", {x});
            return v;
        }
        for (int y : trail) state[y] = 2;
    }
    std::vector<int> bag_count(n, 0), edge_count(n, 0);
    for (int i = 0; i < m; ++i) {
        for (size_t j = 0; j < d.bags[i].size(); ++j) {
            int x = d.bags[i][j];
            if (x < 0 || x >= n) {
                v.add("malformed", "bag " + std::to_string(i) + " holds unknown vertex " + std::to_string(x), {i});
                return v;
            }
            if (j && d.bags[i][j - 1] >= x) {
                v.add("malformed", "bag " + std::to_string(i) + " is not sorted or has repeats", {i});
                return v;
            }
            ++bag_count[x];
        }
        if (d.parent[i] >= 0)
            for (int x : d.bags[i])
                if (sorted_contains(d.bags[d.parent[i]], x)) ++edge_count[x];
    }
    for (int x = 0; x < n; ++x) {
        if (bag_count[x] == 0)
            v.add("vertex-missing", "vertex " + std::to_string(x) + " is in no bag", {x});
        else if (edge_count[x] != bag_count[x] - 1)
            v.add("disconnected-occurrence", "bags holding vertex " + std::to_string(x) + " are not connected", {x});
    }
    // coverage: mark pairs per bag
    std::set<Edge> covered;
    for (auto& b : d.bags)
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                if (g.has_edge(b[i], b[j])) covered.insert({b[i], b[j]});
    for (auto e : g.edges())
        if (!covered.count(e))
            v.add("edge-uncovered", "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                        " is in no bag",
                  {e.first, e.second});
    return v;
}

const char* to_string(BagKind k) {
    switch (k) {
    case BagKind::leaf: return "leaf";
    case BagKind::introduce: return "introduce";
    case BagKind::forget: return "forget";
    case BagKind::join: return "join";
    case BagKind::edge: return "edge";
    }
    return "?";
}

namespace {

struct NiceBuilder {
    NiceDecomposition d;
    std::vector<std::vector<int>> ch;

    int add(std::vector<int> bag, BagKind k, int vertex, Edge e, std::vector<int> children) {
        int id = d.bag_count();
        d.bags.push_back(std::move(bag));
        d.kind.push_back(k);
        d.vertex.push_back(vertex);
        d.edge.push_back(e);
        ch.push_back(std::move(children));
        return id;
    }
    void finish(int root) {
        d.parent.assign(d.bag_count(), -1);
        for (int i = 0; i < d.bag_count(); ++i)
            for (int c : ch[i]) d.parent[c] = i;
        d.root = root;
    }
};

} // namespace

NiceDecomposition make_nice(const TreeDecomposition& td) {
    NiceBuilder nb;
    if (td.bag_count() == 0) return nb.d;
    auto ch = td.children();
    std::vector<int> top(td.bag_count(), -1);
    for (int b : td.postorder()) {
        const auto& bag = td.bags[b];
        std::vector<int> tops;
        for (int c : ch[b]) {
            int cur = top[c];
            std::vector<int> cb = td.bags[c];
            for (int x : td.bags[c])
                if (!sorted_contains(bag, x)) {
                    sorted_erase(cb, x);
                    cur = nb.add(cb, BagKind::forget, x, {-1, -1}, {cur});
                }
            for (int x : bag)
                if (!sorted_contains(cb, x)) {
                    sorted_insert(cb, x);
                    cur = nb.add(cb, BagKind::introduce, x, {-1, -1}, {cur});
                }
            tops.push_back(cur);
        }
        if (tops.empty()) {
            if (bag.empty()) throw invalid_input("make_nice: empty leaf bag");
            std::vector<int> cb{bag[0]};
            int cur = nb.add(cb, BagKind::leaf, bag[0], {-1, -1}, {});
            for (size_t i = 1; i < bag.size(); ++i) {
                sorted_insert(cb, bag[i]);
                cur = nb.add(cb, BagKind::introduce, bag[i], {-1, -1}, {cur});
            }
            tops.push_back(cur);
        }
        int cur = tops[0];
        for (size_t i = 1; i < tops.size(); ++i) cur = nb.add(bag, BagKind::join, -1, {-1, -1}, {cur, tops[i]});
        top[b] = cur;
    }
    nb.finish(top[td.root]);
    return nb.d;
}

Verdict validate_nice(const NiceDecomposition& d) {
    Verdict v;
    auto ch = d.children();
    for (int i = 0; i < d.bag_count(); ++i) {
        const auto& b = d.bags[i];
        auto bad = [&](const std::string& why) { v.add("nice-kind", "bag " + std::to_string(i) + ": " + why, {i}); };
        switch (d.kind[i]) {
        case BagKind::leaf:
            if (!ch[i].empty() || b.size() != 1) bad("leaf must be a childless single vertex");
            break;
        case BagKind::introduce: {
            if (ch[i].size() != 1) {
                bad("introduce needs one child");
                break;
            }
            auto c = d.bags[ch[i][0]];
            sorted_insert(c, d.vertex[i]);
            if (c != b || sorted_contains(d.bags[ch[i][0]], d.vertex[i])) bad("introduce must add exactly its vertex");
            break;
        }
        case BagKind::forget: {
            if (ch[i].size() != 1) {
                bad("forget needs one child");
                break;
            }
            auto c = b;
            sorted_insert(c, d.vertex[i]);
            if (c != d.bags[ch[i][0]] || sorted_contains(b, d.vertex[i])) bad("forget must drop exactly its vertex");
            break;
        }
        case BagKind::join:
            if (ch[i].size() != 2 || d.bags[ch[i][0]] != b || d.bags[ch[i][1]] != b)
                bad("join needs two children equal to it");
            break;
        case BagKind::edge:
            if (ch[i].size() != 1 || d.bags[ch[i][0]] != b || !sorted_contains(b, d.edge[i].first) ||
                !sorted_contains(b, d.edge[i].second))
                bad("edge bag must copy its child and hold both endpoints");
            break;
        }
    }
    return v;
}

NiceDecomposition make_extra_nice(const NiceDecomposition& d, const Graph& g) {
    NiceBuilder nb;
    if (d.bag_count() == 0) {
        nb.d.edge_bag.assign(g.edge_count(), -1);
        return nb.d;
    }
    auto ch = d.children();
    std::vector<int> top(d.bag_count(), -1);
    std::vector<int> assoc(g.edge_count(), -1);
    for (int x : d.postorder()) {
        std::vector<int> kids;
        for (int c : ch[x]) kids.push_back(top[c]);
        int cur = nb.add(d.bags[x], d.kind[x], d.vertex[x], d.edge[x], kids);
        std::vector<int> fresh;
        if (d.kind[x] == BagKind::edge) {
            int e = g.edge_index(d.edge[x].first, d.edge[x].second);
            if (e >= 0 && assoc[e] < 0) assoc[e] = cur;
        }
        if (d.kind[x] == BagKind::introduce || d.kind[x] == BagKind::leaf) {
            int v = d.vertex[x];
            for (int u : d.bags[x])
                if (u != v && g.has_edge(u, v)) fresh.push_back(g.edge_index(u, v));
        }
        for (int e : fresh) {
            if (assoc[e] >= 0) continue;
            cur = nb.add(d.bags[x], BagKind::edge, -1, g.edges()[e], {cur});
            assoc[e] = cur;
        }
        top[x] = cur;
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (assoc[e] < 0) throw invalid_input("make_extra_nice: edge " + std::to_string(e) + " is not covered");
    nb.finish(top[d.root]);
    nb.d.edge_bag = assoc;
    return nb.d;
}

std::vector<int> MixedDecomposition::product_bag(int bag) const {
    std::vector<int> out;
    for (int v : base.bags[bag])
        for (int r = 0; r < k; ++r) out.push_back(v * k + r);
    return out;
}

TreeDecomposition MixedDecomposition::product_decomposition() const {
    TreeDecomposition t;
    t.parent = base.parent;
    t.root = base.root;
    for (int i = 0; i < base.bag_count(); ++i) t.bags.push_back(product_bag(i));
    return t;
}

int MixedDecomposition::width() const { return k * (base.width() + 1) - 1; }

MixedDecomposition lift_to_mixed(const NiceDecomposition& d, int k) {
    if (k < 3) throw unsupported_cycle_length("mixed decomposition needs k >= 3");
    return MixedDecomposition{d, k};
}

std::string write_td(const TreeDecomposition& d, int vertex_count) {
    std::ostringstream os;
    os << "s td " << d.bag_count() << ' ' << d.width() + 1 << ' ' << vertex_count << '\n';
    for (int i = 0; i < d.bag_count(); ++i) {
        os << "b " << i + 1;
        for (int v : d.bags[i]) os << ' ' << v + 1;
        os << '\n';
    }
    for (int i = 0; i < d.bag_count(); ++i)
        if (d.parent[i] >= 0) os << d.parent[i] + 1 << ' ' << i + 1 << '\n';
    return os.str();
}

TreeDecomposition read_td(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0, nb = -1;
    TreeDecomposition d;
    std::vector<Edge> tree;
    auto fail = [&](const std::string& why) {
        throw invalid_input("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "s") {
            std::string td;
            int maxb, nv;
            if (!(ls >> td >> nb >> maxb >> nv) || td != "td" || nb < 0) fail("bad s-line");
            d.bags.assign(nb, {});
        } else if (tok == "b") {
            if (nb < 0) fail("b-line before s-line");
            int id;
            if (!(ls >> id) || id < 1 || id > nb) fail("bad bag id");
            int v;
            while (ls >> v) {
                if (v < 1) fail("bad vertex id");
                d.bags[id - 1].push_back(v - 1);
            }
            std::sort(d.bags[id - 1].begin(), d.bags[id - 1].end());
        } else {
            if (nb < 0) fail("edge line before s-line");
            int a = std::stoi(tok), b;
            if (!(ls >> b) || a < 1 || b < 1 || a > nb || b > nb) fail("bad tree edge");
            tree.emplace_back(a - 1, b - 1);
        }
    }
    if (nb < 0) throw invalid_input("missing s-line");
    d.parent.assign(nb, -1);
    if (nb == 0) return d;
    if (static_cast<int>(tree.size()) != nb - 1) throw invalid_input("bag tree must have bags-1 edges");
    d.root = 0;
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : tree) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> par(nb, -2);
    par[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (par[y] == -2) {
                par[y] = x;
                stack.push_back(y);
            }
    }
    for (int i = 0; i < nb; ++i)
        if (par[i] == -2) throw invalid_input("bag tree is disconnected");
    d.parent = par;
    return d;
}

} // namespace leafpower
