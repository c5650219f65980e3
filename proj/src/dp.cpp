#include "leafpower/dp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "leafpower/errors.hpp"

namespace leafpower {

bool DPContext::distance_ok(int u, int v, uint8_t d) const {
    if (!g->has_edge(u, v)) return d == kFar;
    if (d == kFar || d == kApart) return false;
    if (labeled) return labeled->range(u, v).contains(d);
    return d <= cap;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Prov {
    int32_t a = -1, b = -1;
    int32_t xv = -1, wv = -1;  // attach: top of xv's chain under node (wv, wi)
    uint8_t wi = 0, clen = 0;
};

using Sink = std::function<void(LocalPicture&, const Prov&)>;

uint8_t norm_mu(uint8_t m, int cap) { return m >= cap ? kFar : m; }

// Copy of p with new chain lengths. Added nodes sit above the old top of an open chain.
LocalPicture resize_chains(const LocalPicture& p, const std::vector<uint8_t>& newlen) {
    LocalPicture q;
    q.cap = p.cap;
    q.vertices = p.vertices;
    q.len = newlen;
    q.open = p.open;
    q.comp = p.comp;
    q.rebuild_offsets();
    int S = p.slots(), N = q.nodes(), cap = p.cap;
    q.par = p.par;
    for (int s = 0; s < S; ++s)
        if (p.par[s] < kHiddenParent) {
            int t = p.slot_of_node(p.par[s]);
            q.par[s] = static_cast<uint8_t>(q.node(t, p.par[s] - p.first[t]));
        }
    // old node behind each new node, plus extra height above it
    std::vector<int> src(N), up(N);
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < newlen[s]; ++i) {
            int j = std::min<int>(i, p.len[s] - 1);
            src[q.node(s, i)] = p.node(s, j);
            up[q.node(s, i)] = i - j;
        }
    q.mu.resize(N);
    q.dist.assign(N * N, 0);
    for (int a = 0; a < N; ++a) {
        q.mu[a] = norm_mu(capped_add(p.mu[src[a]], static_cast<uint8_t>(up[a]), cap), cap);
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            uint8_t v;
            if (src[a] == src[b])
                v = static_cast<uint8_t>(std::abs(up[a] - up[b]));
            else
                v = capped_add(capped_add(p.d(src[a], src[b]), static_cast<uint8_t>(up[a]), cap),
                               static_cast<uint8_t>(up[b]), cap);
            q.dist[a * N + b] = v;
        }
    }
    return q;
}

bool rootless_ok(const LocalPicture& p) {
    int C = p.component_count();
    int rootless = 0;
    for (int c = 0; c < C; ++c) {
        bool has_slot = false, has_open = false;
        for (int s = 0; s < p.slots(); ++s)
            if (p.comp[s] == c) {
                has_slot = true;
                has_open |= p.open[s] != 0;
            }
        if (has_slot && !has_open) ++rootless;
    }
    return rootless <= 1;
}

LocalPicture drop_slot(const LocalPicture& p, int s) {
    LocalPicture q;
    q.cap = p.cap;
    int S = p.slots();
    std::vector<int> keep;
    std::vector<int> renum(p.nodes(), -1);
    for (int t = 0; t < S; ++t)
        if (t != s) {
            q.vertices.push_back(p.vertices[t]);
            q.len.push_back(p.len[t]);
            q.open.push_back(p.open[t]);
            q.comp.push_back(p.comp[t]);
            q.par.push_back(p.par[t]);
            for (int i = 0; i < p.len[t]; ++i) {
                renum[p.node(t, i)] = static_cast<int>(keep.size());
                keep.push_back(p.node(t, i));
            }
        }
    for (auto& x : q.par)
        if (x < kHiddenParent) x = renum[x] < 0 ? kHiddenParent : static_cast<uint8_t>(renum[x]);
    q.rebuild_offsets();
    int N = q.nodes();
    q.mu.resize(N);
    q.dist.resize(N * N);
    for (int a = 0; a < N; ++a) {
        q.mu[a] = p.mu[keep[a]];
        for (int b = 0; b < N; ++b) q.dist[a * N + b] = p.d(keep[a], keep[b]);
    }
    return q;
}

void do_introduce(const LocalPicture& p, int v, const Sink& out) {
    if (p.slots() == 0) return;  // a finished tree cannot grow a new part
    LocalPicture q;
    q.cap = p.cap;
    int S = p.slots();
    int at = static_cast<int>(std::lower_bound(p.vertices.begin(), p.vertices.end(), v) - p.vertices.begin());
    std::vector<int> old_node;  // new node -> old node or -1
    std::vector<int> renum(p.nodes(), -1);
    for (int t = 0; t <= S; ++t) {
        if (t == at) {
            q.vertices.push_back(v);
            q.len.push_back(1);
            q.open.push_back(1);
            q.comp.push_back(static_cast<uint8_t>(p.component_count()));
            q.par.push_back(kNoParent);
            old_node.push_back(-1);
        }
        if (t == S) break;
        q.vertices.push_back(p.vertices[t]);
        q.len.push_back(p.len[t]);
        q.open.push_back(p.open[t]);
        q.comp.push_back(p.comp[t]);
        q.par.push_back(p.par[t]);
        for (int i = 0; i < p.len[t]; ++i) {
            renum[p.node(t, i)] = static_cast<int>(old_node.size());
            old_node.push_back(p.node(t, i));
        }
    }
    for (auto& x : q.par)
        if (x < kHiddenParent) x = static_cast<uint8_t>(renum[x]);
    q.rebuild_offsets();
    int N = q.nodes();
    q.mu.resize(N);
    q.dist.resize(N * N);
    for (int a = 0; a < N; ++a) {
        q.mu[a] = old_node[a] < 0 ? kFar : p.mu[old_node[a]];
        for (int b = 0; b < N; ++b) {
            if (a == b)
                q.dist[a * N + b] = 0;
            else if (old_node[a] < 0 || old_node[b] < 0)
                q.dist[a * N + b] = kApart;
            else
                q.dist[a * N + b] = p.d(old_node[a], old_node[b]);
        }
    }
    out(q, Prov{});
}

void do_forget(const LocalPicture& p, int v, const DPContext& ctx, const Sink& out) {
    int s = p.slot_of(v);
    if (s < 0) throw internal_error("forget of a vertex not in the bag");
    int c = p.comp[s];
    bool alone = true;
    for (int t = 0; t < p.slots(); ++t) {
        if (t == s) continue;
        if (p.comp[t] == c) alone = false;
        if (ctx.adjacent(v, p.vertices[t]) && p.comp[t] != c) return;
    }
    if (alone && p.slots() > 1) return;  // a finished part would stay disconnected from the rest
    LocalPicture q = p;
    int rep = p.node(s, 0);
    for (int x = 0; x < p.nodes(); ++x) {
        int t = p.slot_of_node(x);
        if (t == s || p.comp[t] != c) continue;
        uint8_t m = std::min(p.mu[x], p.d(x, rep));
        for (int i = 0; i < p.len[s]; ++i) m = std::min(m, capped_add(p.d(x, p.node(s, i)), p.mu[p.node(s, i)], p.cap));
        q.mu[x] = norm_mu(m, p.cap);
    }
    q = drop_slot(q, s);
    if (!rootless_ok(q)) return;
    out(q, Prov{});
}

// Attach the top of slot su (with final length clen) below node (sv, wi).
bool attach(const LocalPicture& p, int su, int sv, int wi, int clen, const DPContext& ctx, LocalPicture& q) {
    int cap = p.cap;
    std::vector<uint8_t> nl = p.len;
    nl[su] = static_cast<uint8_t>(clen);
    if (wi >= p.len[sv]) nl[sv] = static_cast<uint8_t>(wi + 1);
    q = (nl == p.len) ? p : resize_chains(p, nl);
    int cP = q.comp[su], cQ = q.comp[sv];
    int x = q.top(su), w = q.node(sv, wi);
    int N = q.nodes();
    std::vector<int> P, Q, Ps, Qs;
    for (int t = 0; t < q.slots(); ++t) {
        if (q.comp[t] == cP) {
            Ps.push_back(t);
            for (int i = 0; i < q.len[t]; ++i) P.push_back(q.node(t, i));
        } else if (q.comp[t] == cQ) {
            Qs.push_back(t);
            for (int i = 0; i < q.len[t]; ++i) Q.push_back(q.node(t, i));
        }
    }
    const uint8_t one = 1;
    auto via = [&](int a, int b) {  // a in P, b in Q
        return capped_add(capped_add(q.d(a, x), one, cap), q.d(w, b), cap);
    };
    if (capped_add(capped_add(q.mu[x], one, cap), q.mu[w], cap) != kFar) return false;
    for (int t : Qs)
        if (capped_add(capped_add(q.mu[x], one, cap), q.d(w, q.node(t, 0)), cap) != kFar) return false;
    for (int s : Ps)
        if (capped_add(capped_add(q.d(q.node(s, 0), x), one, cap), q.mu[w], cap) != kFar) return false;
    for (int s : Ps)
        for (int t : Qs)
            if (!ctx.distance_ok(q.vertices[s], q.vertices[t], via(q.node(s, 0), q.node(t, 0)))) return false;
    std::vector<uint8_t> mu = q.mu;
    for (int a : P) mu[a] = std::min(mu[a], capped_add(capped_add(q.d(a, x), one, cap), q.mu[w], cap));
    for (int b : Q) mu[b] = std::min(mu[b], capped_add(capped_add(q.d(b, w), one, cap), q.mu[x], cap));
    for (int a = 0; a < N; ++a) q.mu[a] = norm_mu(mu[a], cap);
    for (int a : P)
        for (int b : Q) q.dist[a * N + b] = q.dist[b * N + a] = via(a, b);
    for (int s : Ps) q.comp[s] = static_cast<uint8_t>(cQ);
    q.open[su] = 0;
    q.par[su] = static_cast<uint8_t>(w);
    return true;
}

void do_edge(const LocalPicture& p, Edge e, const DPContext& ctx, const Sink& out) {
    {
        LocalPicture copy = p;
        out(copy, Prov{});
    }
    int cap = p.cap;
    int su0 = p.slot_of(e.first), sv0 = p.slot_of(e.second);
    if (su0 < 0 || sv0 < 0) throw internal_error("edge bag without its endpoints");
    if (p.comp[su0] == p.comp[sv0]) return;
    for (int dir = 0; dir < 2; ++dir) {
        int cP = p.comp[dir ? sv0 : su0], cQ = p.comp[dir ? su0 : sv0];
        // the root chain of P goes below any inner node of Q
        int xs = -1;
        for (int s = 0; s < p.slots(); ++s)
            if (p.comp[s] == cP && p.open[s]) xs = s;
        if (xs < 0) continue;
        for (int t = 0; t < p.slots(); ++t) {
            if (p.comp[t] != cQ) continue;
            int wmax = p.open[t] ? cap - 1 : p.len[t] - 1;
            for (int wi = 1; wi <= wmax; ++wi)
                for (int clen = p.len[xs]; clen + wi <= cap; ++clen) {
                    LocalPicture q;
                    if (!attach(p, xs, t, wi, clen, ctx, q)) continue;
                    Prov pr;
                    pr.xv = p.vertices[xs];
                    pr.wv = p.vertices[t];
                    pr.wi = static_cast<uint8_t>(wi);
                    pr.clen = static_cast<uint8_t>(clen);
                    out(q, pr);
                }
        }
    }
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int a) {
        while (up[a] != a) a = up[a] = up[up[a]];
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[a] = b;
        return true;
    }
};

bool do_join(const LocalPicture& L0, const LocalPicture& R0, const DPContext& ctx, LocalPicture& out) {
    int S = L0.slots(), cap = L0.cap;
    if (S == 0) return false;  // two finished trees
    std::vector<uint8_t> nl(S);
    for (int s = 0; s < S; ++s) {
        bool lc = !L0.open[s], rc = !R0.open[s];
        if (lc && rc && L0.len[s] != R0.len[s]) return false;
        if (lc && R0.len[s] > L0.len[s]) return false;
        if (rc && L0.len[s] > R0.len[s]) return false;
        nl[s] = std::max(L0.len[s], R0.len[s]);
    }
    LocalPicture L = nl == L0.len ? L0 : resize_chains(L0, nl);
    LocalPicture R = nl == R0.len ? R0 : resize_chains(R0, nl);
    // a chain closed on both sides must hang below the same visible node
    for (int s = 0; s < S; ++s)
        if (!L.open[s] && !R.open[s] && (L.par[s] != R.par[s] || L.par[s] == kHiddenParent)) return false;
    int N = L.nodes();
    // the union of both sides must stay a forest: chain edges, visible attach edges,
    // then one link per extra fragment that a side joins through forgotten nodes
    UnionFind all(N), left(N), right(N);
    for (int s = 0; s < S; ++s)
        for (int i = 0; i + 1 < nl[s]; ++i) {
            all.unite(L.node(s, i), L.node(s, i + 1));
            left.unite(L.node(s, i), L.node(s, i + 1));
            right.unite(L.node(s, i), L.node(s, i + 1));
        }
    for (int s = 0; s < S; ++s) {
        if (!L.open[s] && L.par[s] != kHiddenParent) {
            left.unite(L.top(s), L.par[s]);
            if (!all.unite(L.top(s), L.par[s])) return false;
        }
        if (!R.open[s] && R.par[s] != kHiddenParent) {
            right.unite(R.top(s), R.par[s]);
            bool shared = !L.open[s] && L.par[s] == R.par[s];
            if (!shared && !all.unite(R.top(s), R.par[s])) return false;
        }
    }
    for (int side = 0; side < 2; ++side) {
        const LocalPicture& X = side ? R : L;
        UnionFind& own = side ? right : left;
        int C = X.component_count();
        std::vector<int> anchor(C, -1);
        for (int a = 0; a < N; ++a) {
            int c = X.comp[X.slot_of_node(a)];
            int f = own.find(a);
            if (anchor[c] < 0) {
                anchor[c] = a;
                continue;
            }
            if (own.find(anchor[c]) == f) continue;
            own.unite(anchor[c], a);
            if (!all.unite(anchor[c], a)) return false;
        }
    }
    out.cap = cap;
    out.vertices = L.vertices;
    out.len = nl;
    out.open.resize(S);
    out.comp.resize(S);
    out.par.resize(S);
    for (int s = 0; s < S; ++s) {
        out.open[s] = L.open[s] && R.open[s];
        out.par[s] = !L.open[s] ? L.par[s] : R.par[s];
        out.comp[s] = static_cast<uint8_t>(all.find(L.node(s, 0)));
    }
    out.rebuild_offsets();
    std::vector<int> slot_of_node(N);
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < nl[s]; ++i) slot_of_node[out.node(s, i)] = s;
    // distances: closure of both sides within each merged group
    out.dist.assign(N * N, kApart);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) out.dist[a * N + b] = std::min(L.d(a, b), R.d(a, b));
    std::vector<std::vector<int>> groups;
    {
        std::map<int, int> gid;
        for (int a = 0; a < N; ++a) {
            int gkey = out.comp[slot_of_node[a]];
            auto [it, fresh] = gid.emplace(gkey, static_cast<int>(groups.size()));
            if (fresh) groups.emplace_back();
            groups[it->second].push_back(a);
        }
    }
    for (auto& gr : groups) {
        // a group made of one component on each side needs no closure
        bool needs = false;
        int l0 = L.comp[slot_of_node[gr[0]]], r0 = R.comp[slot_of_node[gr[0]]];
        for (int a : gr)
            if (L.comp[slot_of_node[a]] != l0 || R.comp[slot_of_node[a]] != r0) needs = true;
        if (needs)
            for (int m : gr)
                for (int a : gr) {
                    uint8_t am = out.dist[a * N + m];
                    if (am == kApart || am == kFar) continue;
                    for (int b : gr) {
                        uint8_t v = capped_add(am, out.dist[m * N + b], cap);
                        if (v < out.dist[a * N + b]) out.dist[a * N + b] = v;
                    }
                }
        for (int a : gr)
            for (int b : gr)
                if (out.dist[a * N + b] == kApart) out.dist[a * N + b] = kFar;
        // guards across sides
        for (int a : gr) {
            int sa = slot_of_node[a];
            for (int b : gr) {
                int sb = slot_of_node[b];
                uint8_t dab = out.dist[a * N + b];
                if (capped_add(capped_add(L.mu[a], dab, cap), R.mu[b], cap) != kFar) return false;
                if (L.comp[sa] != L.comp[sb] && capped_add(capped_add(L.mu[a], dab, cap), L.mu[b], cap) != kFar)
                    return false;
                if (R.comp[sa] != R.comp[sb] && capped_add(capped_add(R.mu[a], dab, cap), R.mu[b], cap) != kFar)
                    return false;
                if (b == out.node(sb, 0)) {
                    if (L.comp[sa] != L.comp[sb] && capped_add(L.mu[a], dab, cap) != kFar) return false;
                    if (R.comp[sa] != R.comp[sb] && capped_add(R.mu[a], dab, cap) != kFar) return false;
                }
            }
        }
        // leaf distances between newly joined representatives
        for (int a : gr) {
            int sa = slot_of_node[a];
            if (a != out.node(sa, 0)) continue;
            for (int b : gr) {
                int sb = slot_of_node[b];
                if (sb <= sa || b != out.node(sb, 0)) continue;
                if (L.comp[sa] == L.comp[sb] || R.comp[sa] == R.comp[sb]) continue;
                if (!ctx.distance_ok(out.vertices[sa], out.vertices[sb], out.dist[a * N + b])) return false;
            }
        }
    }
    out.mu.resize(N);
    for (auto& gr : groups)
        for (int a : gr) {
            uint8_t m = kFar;
            for (int b : gr) m = std::min(m, capped_add(std::min(L.mu[b], R.mu[b]), out.dist[a * N + b], cap));
            out.mu[a] = norm_mu(m, cap);
        }
    for (int a = 0; a < N; ++a) out.dist[a * N + a] = 0;
    if (!rootless_ok(out)) return false;
    return true;
}

struct Table {
    std::vector<std::string> keys;
    std::vector<Prov> prov;
    std::unordered_map<std::string, int> index;

    void add(LocalPicture& p, const Prov& pr) {
        p.normalize();
        std::string k = p.key();
        auto [it, fresh] = index.emplace(std::move(k), static_cast<int>(keys.size()));
        if (!fresh) return;
        keys.push_back(it->first);
        prov.push_back(pr);
    }
    void release_pictures() {
        std::unordered_map<std::string, int>().swap(index);
        std::vector<std::string>().swap(keys);
    }
};

std::vector<LocalPicture> collect(const std::function<void(const Sink&)>& gen) {
    std::vector<LocalPicture> out;
    std::unordered_map<std::string, int> seen;
    gen([&](LocalPicture& p, const Prov&) {
        p.normalize();
        if (seen.emplace(p.key(), 0).second) out.push_back(p);
    });
    return out;
}

} // namespace

std::vector<LocalPicture> stored_leaf_pictures(int v, int k) {
    // Residues are dropped; an open chain grows on demand, so only the single node remains.
    std::vector<LocalPicture> out;
    std::unordered_map<std::string, int> seen;
    for (auto p : leaf_bag_pictures(v, k)) {
        if (p.len[0] != 1) continue;
        p.normalize();
        if (seen.emplace(p.key(), 0).second) out.push_back(p);
    }
    return out;
}

std::vector<LocalPicture> introduce_transition(const std::vector<LocalPicture>& child, int v, const DPContext&) {
    return collect([&](const Sink& s) {
        for (auto& p : child) do_introduce(p, v, s);
    });
}

std::vector<LocalPicture> forget_transition(const std::vector<LocalPicture>& child, int v, const DPContext& ctx) {
    return collect([&](const Sink& s) {
        for (auto& p : child) do_forget(p, v, ctx, s);
    });
}

std::vector<LocalPicture> edge_transition(const std::vector<LocalPicture>& child, Edge e, const DPContext& ctx) {
    return collect([&](const Sink& s) {
        for (auto& p : child) do_edge(p, e, ctx, s);
    });
}

std::vector<LocalPicture> join_transition(const std::vector<LocalPicture>& left, const std::vector<LocalPicture>& right,
                                          const DPContext& ctx) {
    return collect([&](const Sink& s) {
        for (auto& l : left)
            for (auto& r : right) {
                if (l.vertices != r.vertices) throw internal_error("join of different bags");
                LocalPicture q;
                if (do_join(l, r, ctx, q)) s(q, Prov{});
            }
    });
}

bool root_accepts(const LocalPicture& p0, const DPContext& ctx) {
    std::vector<LocalPicture> cur{p0};
    for (int v : p0.vertices) {
        cur = forget_transition(cur, v, ctx);
        if (cur.empty()) return false;
    }
    return true;
}

namespace {

LeafRootTree rebuild_tree(const std::vector<Prov>& attaches, const std::vector<int>& vertices_seen, int n) {
    std::vector<int> len(n, 1);
    std::vector<Prov> uniq;
    std::vector<char> seen(n, 0);
    for (auto& a : attaches)
        if (!seen[a.xv]) {
            seen[a.xv] = 1;
            uniq.push_back(a);
        }
    for (auto& a : uniq) {
        len[a.xv] = std::max<int>(len[a.xv], a.clen);
        len[a.wv] = std::max<int>(len[a.wv], a.wi + 1);
    }
    std::vector<int> first(n + 1, 0);
    for (int v = 0; v < n; ++v) first[v + 1] = first[v] + len[v];
    int N = first[n];
    std::vector<std::vector<int>> adj(N);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int v = 0; v < n; ++v)
        for (int i = 0; i + 1 < len[v]; ++i) link(first[v] + i, first[v] + i + 1);
    for (auto& a : uniq) link(first[a.xv] + a.clen - 1, first[a.wv] + a.wi);
    (void)vertices_seen;
    // prune dangling chain tops
    std::vector<char> alive(N, 1);
    std::vector<int> deg(N);
    for (int x = 0; x < N; ++x) deg[x] = static_cast<int>(adj[x].size());
    std::vector<char> is_rep(N, 0);
    for (int v = 0; v < n; ++v) is_rep[first[v]] = 1;
    std::vector<int> stack;
    for (int x = 0; x < N; ++x)
        if (!is_rep[x] && deg[x] <= 1) stack.push_back(x);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (!alive[x]) continue;
        alive[x] = 0;
        for (int y : adj[x])
            if (alive[y] && --deg[y] <= 1 && !is_rep[y]) stack.push_back(y);
    }
    std::vector<int> id(N, -1);
    int m = 0;
    for (int x = 0; x < N; ++x)
        if (alive[x]) id[x] = m++;
    std::vector<Edge> es;
    for (int x = 0; x < N; ++x)
        if (alive[x])
            for (int y : adj[x])
                if (alive[y] && x < y) es.emplace_back(id[x], id[y]);
    std::vector<int> lm(m, -1);
    for (int v = 0; v < n; ++v) lm[id[first[v]]] = v;
    int root = 0;
    std::vector<int> dg(m, 0);
    for (auto [a, b] : es) {
        ++dg[a];
        ++dg[b];
    }
    while (root < m && dg[root] < 2) ++root;
    if (root == m) throw internal_error("reconstructed tree has no interior node");
    return LeafRootTree::from_edges(m, es, root, lm);
}

} // namespace

DPRun run_dp(const NiceDecomposition& d, const DPContext& ctx, const Limits& limits, double deadline_ms) {
    DPRun run;
    auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); };
    std::ofstream trace;
    if (!limits.trace_path.empty()) trace.open(limits.trace_path, std::ios::app);
    int B = d.bag_count();
    std::vector<Table> T(B);
    auto ch = d.children();
    int cap = ctx.cap;
    run.pictures_per_bag.assign(B, 0);
    for (int x : d.postorder()) {
        auto bt = Clock::now();
        Table& t = T[x];
        auto decode = [&](int child, int i) { return LocalPicture::from_key(T[child].keys[i], d.bags[child], cap); };
        switch (d.kind[x]) {
        case BagKind::leaf:
            for (auto p : stored_leaf_pictures(d.vertex[x], cap)) t.add(p, Prov{});
            break;
        case BagKind::introduce: {
            int c = ch[x][0];
            for (int i = 0; i < static_cast<int>(T[c].keys.size()); ++i)
                do_introduce(decode(c, i), d.vertex[x], [&](LocalPicture& q, const Prov& pr) {
                    Prov p2 = pr;
                    p2.a = i;
                    t.add(q, p2);
                });
            break;
        }
        case BagKind::forget: {
            int c = ch[x][0];
            for (int i = 0; i < static_cast<int>(T[c].keys.size()); ++i)
                do_forget(decode(c, i), d.vertex[x], ctx, [&](LocalPicture& q, const Prov& pr) {
                    Prov p2 = pr;
                    p2.a = i;
                    t.add(q, p2);
                });
            break;
        }
        case BagKind::edge: {
            int c = ch[x][0];
            for (int i = 0; i < static_cast<int>(T[c].keys.size()); ++i)
                do_edge(decode(c, i), d.edge[x], ctx, [&](LocalPicture& q, const Prov& pr) {
                    Prov p2 = pr;
                    p2.a = i;
                    t.add(q, p2);
                });
            break;
        }
        case BagKind::join: {
            int cl = ch[x][0], cr = ch[x][1];
            std::vector<LocalPicture> R;
            for (int j = 0; j < static_cast<int>(T[cr].keys.size()); ++j) R.push_back(decode(cr, j));
            for (int i = 0; i < static_cast<int>(T[cl].keys.size()); ++i) {
                auto L = decode(cl, i);
                for (int j = 0; j < static_cast<int>(R.size()); ++j) {
                    LocalPicture q;
                    if (!do_join(L, R[j], ctx, q)) continue;
                    Prov pr;
                    pr.a = i;
                    pr.b = j;
                    t.add(q, pr);
                }
                if (limits.max_seconds > 0 && elapsed() > deadline_ms) break;
            }
            break;
        }
        }
        for (int c : ch[x]) T[c].release_pictures();
        size_t cnt = t.keys.size();
        run.pictures_per_bag[x] = cnt;
        run.pictures_max = std::max(run.pictures_max, cnt);
        run.pictures_total += cnt;
        if (trace.is_open())
            trace << to_string(d.kind[x]) << '\t' << cnt << '\t'
                  << std::chrono::duration<double, std::milli>(Clock::now() - bt).count() << '\n';
        Stats st;
        st.pictures_max = run.pictures_max;
        st.pictures_total = run.pictures_total;
        st.pictures_per_bag = run.pictures_per_bag;
        st.millis = elapsed();
        if (cnt > limits.max_pictures_per_bag)
            throw resource_cap("bag " + std::to_string(x) + " holds " + std::to_string(cnt) + " pictures", st);
        if (limits.max_seconds > 0 && elapsed() > deadline_ms) throw resource_cap("time limit exceeded", st);
        if (cnt == 0) return run;  // nothing survives; ancestors would stay empty
    }
    int r = d.root;
    int accepted = -1;
    for (int i = 0; i < static_cast<int>(T[r].keys.size()); ++i)
        if (root_accepts(LocalPicture::from_key(T[r].keys[i], d.bags[r], cap), ctx)) {
            accepted = i;
            break;
        }
    if (accepted < 0) return run;
    // walk provenance downwards
    std::vector<Prov> attaches;
    std::vector<std::pair<int, int>> stack{{r, accepted}};
    while (!stack.empty()) {
        auto [x, i] = stack.back();
        stack.pop_back();
        const Prov& pr = T[x].prov.at(i);
        if (pr.xv >= 0) attaches.push_back(pr);
        if (d.kind[x] == BagKind::leaf) continue;
        if (pr.a < 0) throw internal_error("missing provenance");
        stack.push_back({ch[x][0], pr.a});
        if (d.kind[x] == BagKind::join) stack.push_back({ch[x][1], pr.b});
    }
    run.witness = rebuild_tree(attaches, {}, ctx.g->vertex_count());
    return run;
}

LeafRootTree join_under_root(const std::vector<LeafRootTree>& parts, const std::vector<std::vector<int>>& vertex_of,
                             int n, int path_len) {
    if (parts.size() == 1) {
        LeafRootTree t = parts[0];
        for (auto& m : t.leaf_map)
            if (m >= 0) m = vertex_of[0][m];
        return t;
    }
    std::vector<Edge> es;
    std::vector<int> lm;
    int next = 1;  // node 0 is the global root
    lm.push_back(-1);
    for (size_t c = 0; c < parts.size(); ++c) {
        const auto& t = parts[c];
        int off = next + path_len - 1;
        // path from the global root down to the part's root
        int prev = 0;
        for (int i = 1; i < path_len; ++i) {
            es.emplace_back(prev, next);
            lm.push_back(-1);
            prev = next++;
        }
        for (int x = 0; x < t.node_count(); ++x) {
            lm.push_back(t.leaf_map[x] >= 0 ? vertex_of[c][t.leaf_map[x]] : -1);
            if (t.parent[x] != x) es.emplace_back(off + x, off + t.parent[x]);
        }
        es.emplace_back(prev, off + t.root);
        next = off + t.node_count();
    }
    (void)n;
    return LeafRootTree::from_edges(next, es, 0, lm);
}

} // namespace leafpower
