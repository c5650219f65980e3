#include <chrono>
#include <map>

#include "leafpower/dp.hpp"
#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

using Clock = std::chrono::steady_clock;

LabeledGraph induced_labeled(const LabeledGraph& g, const std::vector<int>& vs) {
    Graph sub = g.graph().induced(vs);
    std::vector<Range> r;
    for (auto [a, b] : sub.edges()) r.push_back(g.range(vs[a], vs[b]));
    return LabeledGraph(sub, r, g.cap());
}

LeafRootTree star_tree(int n) {
    std::vector<Edge> es;
    std::vector<int> lm{-1};
    for (int v = 0; v < n; ++v) {
        es.emplace_back(0, v + 1);
        lm.push_back(v);
    }
    return LeafRootTree::from_edges(n + 1, es, 0, lm);
}

// Two leaves at distance len.
LeafRootTree path_tree(int len) {
    std::vector<Edge> es;
    std::vector<int> lm(len + 1, -1);
    for (int i = 0; i < len; ++i) es.emplace_back(i, i + 1);
    lm[0] = 0;
    lm[len] = 1;
    return LeafRootTree::from_edges(len + 1, es, 1, lm);
}

bool is_clique(const Graph& g) {
    long n = g.vertex_count();
    return g.edge_count() == n * (n - 1) / 2;
}

struct Solved {
    std::optional<LeafRootTree> tree;
    int width = -1;
    int bags = 0;
    DPRun run;
};

Solved solve_connected(const Graph& g, const LabeledGraph* lg, int k, const Limits& limits, double budget_ms) {
    Solved out;
    int n = g.vertex_count();
    if (n == 1) {
        out.tree = star_tree(1);
        return out;
    }
    if (n == 2) {
        out.tree = lg ? path_tree(lg->range(0, 1).lo) : star_tree(2);
        return out;
    }
    if (k == 2) {
        if (is_clique(g)) out.tree = star_tree(n);
        return out;
    }
    TreeDecomposition td = decompose(g);
    out.width = td.width();
    if ((out.width + 1) * k > 250 || k > 120) throw size_limit("bag pictures would exceed 250 nodes");
    NiceDecomposition nd = make_extra_nice(make_nice(td), g);
    out.bags = nd.bag_count();
    DPContext ctx;
    ctx.g = &g;
    ctx.labeled = lg;
    ctx.cap = k;
    out.run = run_dp(nd, ctx, limits, budget_ms);
    if (out.run.witness) {
        Verdict v = lg ? verify_labeled_leaf_root(*lg, *out.run.witness, k) : verify_leaf_root(g, *out.run.witness, k);
        if (!v.ok()) throw internal_error("dynamic program produced an invalid witness: " + v.summary());
        out.tree = out.run.witness;
    }
    return out;
}

// Keeps one vertex per class of true twins. twin_of[v] = kept vertex for removed v, -1 otherwise.
// With ranges, twins must also see identical ranges and admit distance 2 between them.
std::vector<int> true_twin_classes(const Graph& g, const LabeledGraph* lg, std::vector<int>& kept) {
    int n = g.vertex_count();
    std::map<std::vector<int>, std::vector<int>> classes;
    std::vector<int> twin_of(n, -1);
    for (int v = 0; v < n; ++v) {
        std::vector<int> closed = g.neighbors(v);
        closed.push_back(v);
        std::sort(closed.begin(), closed.end());
        auto& members = classes[closed];
        int partner = -1;
        for (int u : members) {
            bool same = true;
            if (lg) {
                same = lg->range(u, v).contains(2);
                for (int x : g.neighbors(v))
                    if (same && x != u && !(lg->range(u, x) == lg->range(v, x))) same = false;
            }
            if (same) {
                partner = u;
                break;
            }
        }
        if (partner < 0) {
            members.push_back(v);
            kept.push_back(v);
        } else {
            twin_of[v] = partner;
        }
    }
    return twin_of;
}

LeafRootTree add_twins(const LeafRootTree& t, const std::vector<int>& kept, const std::vector<int>& twin_of) {
    // t is over kept-indices; rename to original vertices and hang each twin next to its partner
    std::vector<int> parent = t.parent;
    std::vector<int> lm = t.leaf_map;
    for (auto& m : lm)
        if (m >= 0) m = kept[m];
    std::vector<int> leaf_of(twin_of.size(), -1);
    for (int x = 0; x < static_cast<int>(lm.size()); ++x)
        if (lm[x] >= 0) leaf_of[lm[x]] = x;
    for (int v = 0; v < static_cast<int>(twin_of.size()); ++v) {
        if (twin_of[v] < 0) continue;
        int x = leaf_of[twin_of[v]];
        parent.push_back(parent[x]);
        lm.push_back(v);
    }
    LeafRootTree r;
    r.parent = parent;
    r.root = t.root;
    r.leaf_map = lm;
    return r;
}

RecognitionResult run_all(const Graph& g, const LabeledGraph* lg, int k, const Limits& limits) {
    if (k < 2) throw invalid_parameter("k must be at least 2");
    auto t0 = Clock::now();
    RecognitionResult res;
    res.stats.k = k;
    int n = g.vertex_count();
    if (n == 0) {
        res.yes = true;
        LeafRootTree t;
        t.parent = {0};
        t.leaf_map = {-1};
        res.witness = t;
        return res;
    }
    res.components = connected_components(g);
    double budget = limits.max_seconds * 1000;
    std::vector<LeafRootTree> parts;
    for (auto& comp : res.components) {
        Graph sub = g.induced(comp);
        std::optional<LabeledGraph> lsub;
        if (lg) lsub = induced_labeled(*lg, comp);
        double left = budget - std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        Solved s;
        if (limits.reduce_twins && k >= 3) {
            std::vector<int> kept;
            auto twin_of = true_twin_classes(sub, lsub ? &*lsub : nullptr, kept);
            Graph core = sub.induced(kept);
            std::optional<LabeledGraph> lcore;
            if (lsub) lcore = induced_labeled(*lsub, kept);
            s = solve_connected(core, lcore ? &*lcore : nullptr, k, limits, left);
            if (s.tree) s.tree = add_twins(*s.tree, kept, twin_of);
        } else {
            s = solve_connected(sub, lsub ? &*lsub : nullptr, k, limits, left);
        }
        res.stats.width = std::max(res.stats.width, s.width);
        res.stats.bags += s.bags;
        res.stats.pictures_max = std::max(res.stats.pictures_max, s.run.pictures_max);
        res.stats.pictures_total += s.run.pictures_total;
        res.stats.pictures_per_bag.insert(res.stats.pictures_per_bag.end(), s.run.pictures_per_bag.begin(),
                                          s.run.pictures_per_bag.end());
        if (!s.tree) {
            res.yes = false;
            res.component_witnesses.clear();
            res.stats.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            return res;
        }
        res.component_witnesses.push_back(*s.tree);
    }
    res.yes = true;
    res.witness = join_under_root(res.component_witnesses, res.components, n, k);
    Verdict v = lg ? verify_labeled_leaf_root(*lg, *res.witness, k) : verify_leaf_root(g, *res.witness, k);
    if (!v.ok()) throw internal_error("assembled witness fails verification: " + v.summary());
    res.stats.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return res;
}

} // namespace

RecognitionResult recognize(const Graph& g, int k, const Limits& limits) { return run_all(g, nullptr, k, limits); }

RecognitionResult recognize_labeled(const LabeledGraph& g, int K, const Limits& limits) {
    if (K < 2) throw invalid_parameter("K must be at least 2");
    for (auto& r : g.ranges())
        if (r.lo < 2 || r.hi > K || r.lo > r.hi) throw invalid_parameter("edge range outside [2, K]");
    // the caller's K governs non-edges
    LabeledGraph lg(g.graph(), g.ranges(), K);
    return run_all(lg.graph(), &lg, K, limits);
}

} // namespace leafpower
