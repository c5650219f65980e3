// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leafpower/cli.hpp"
#include "leafpower/dp.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/io.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/mso.hpp"
#include "leafpower/product.hpp"
#include "leafpower/reference.hpp"
#include "leafpower/treedecomp.hpp"

using namespace leafpower;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct CorpusItem {
    reference::InstanceBundle bundle;
    RecognitionResult result;
};

std::vector<CorpusItem> corpus;

Outcome round_trip() {
    auto t0 = Clock::now();
    int ok = 0;
    std::string first_bad;
    for (int s = 0; s < 300; ++s) {
        int nl = 3 + s % 6, k = 3 + (s / 6) % 4;
        auto b = reference::random_leaf_power_instance(nl, k, s);
        RecognitionResult r;
        try {
            r = recognize(b.graph, k);
        } catch (const std::exception& e) {
            if (first_bad.empty()) first_bad = "seed " + std::to_string(s) + ": " + e.what();
            corpus.push_back({b, {}});
            continue;
        }
        bool good = r.yes && r.witness && verify_leaf_root(b.graph, *r.witness, k).ok();
        if (good) ++ok;
        else if (first_bad.empty()) first_bad = "seed " + std::to_string(s);
        corpus.push_back({std::move(b), std::move(r)});
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/300 verified in " << secs << " s";
    if (!first_bad.empty()) d << "; first failure " << first_bad;
    return {ok == 300 && secs < 600, d.str()};
}

Outcome oracle_equivalence() {
    int checked = 0, bad = 0;
    std::string first_bad;
    auto note = [&](const Graph& g, int k) {
        ++bad;
        if (first_bad.empty()) first_bad = "k=" + std::to_string(k) + " " + write_graph_file(g);
    };
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : reference::connected_graphs(n)) {
            bool dp = recognize(g, 3).yes;
            bool closed = reference::recognize_k3(g);
            auto bf = reference::brute_force_recognize(g, 3, 18);
            ++checked;
            if (bf.answer == reference::Answer::no_within_budget || dp != closed || dp != bf.yes()) note(g, 3);
        }
    for (int n = 1; n <= 4; ++n)
        for (const Graph& g : reference::connected_graphs(n)) {
            bool dp = recognize(g, 4).yes;
            auto bf = reference::brute_force_recognize(g, 4, 16);
            ++checked;
            if (bf.answer == reference::Answer::no_within_budget || dp != bf.yes()) note(g, 4);
        }
    std::string d = std::to_string(checked) + " comparisons, " + std::to_string(bad) + " disagreements";
    if (!first_bad.empty()) d += "; first: " + first_bad;
    return {bad == 0, d};
}

Outcome rejection() {
    int checked = 0, accepted = 0;
    std::string which;
    for (int len = 4; len <= 8; ++len)
        for (int k = 3; k <= 6; ++k) {
            ++checked;
            if (recognize(graphs::cycle(len), k).yes) {
                ++accepted;
                which += " C" + std::to_string(len) + "@" + std::to_string(k);
            }
        }
    ++checked;
    if (recognize(graphs::bull(), 3).yes) {
        ++accepted;
        which += " bull@3";
    }
    return {accepted == 0, std::to_string(checked) + " inputs, " + std::to_string(accepted) + " false accepts" + which};
}

Outcome monotonicity() {
    int tried = 0, ok = 0;
    for (auto& c : corpus) {
        if (!c.result.yes || !c.result.witness) continue;
        ++tried;
        int k = c.bundle.k;
        LeafRootTree sub = subdivide_leaf_edges(*c.result.witness);
        bool sub_ok = verify_leaf_root(c.bundle.graph, sub, k + 2).ok();
        bool rec_ok = false;
        try {
            RecognitionResult r = recognize(c.bundle.graph, k + 2);
            rec_ok = r.yes && r.witness && verify_leaf_root(c.bundle.graph, *r.witness, k + 2).ok();
        } catch (const std::exception&) {
        }
        ok += sub_ok && rec_ok;
    }
    return {tried == 300 && ok == tried, std::to_string(ok) + "/" + std::to_string(tried) + " hold at k+2"};
}

Outcome lift_bound() {
    std::mt19937_64 rng(5);
    int checked = 0, ok = 0;
    for (int i = 0; i < 100; ++i) {
        int n = std::uniform_int_distribution<int>(5, 12)(rng);
        double p = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
        std::bernoulli_distribution coin(p);
        std::vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng)) es.emplace_back(u, v);
        Graph g(n, es);
        NiceDecomposition nd = make_nice(decompose(g));
        for (int k = 3; k <= 5; ++k) {
            ++checked;
            MixedDecomposition m = lift_to_mixed(nd, k);
            ProductGraph prod(g, k);
            bool good = m.width() <= k * (nd.width() + 1) - 1 &&
                        validate_decomposition(prod.as_graph(), m.product_decomposition()).ok();
            ok += good;
        }
    }
    return {ok == checked, std::to_string(ok) + "/" + std::to_string(checked) + " lifts within bound and valid"};
}

Outcome labeled() {
    auto t0 = Clock::now();
    int accepted = 0, tightened = 0, arbitrated = 0, still_yes = 0;
    std::string first_bad;
    for (int s = 0; s < 100; ++s) {
        int nl = 3 + s % 6, K = 3 + (s / 6) % 4;
        auto b = reference::random_leaf_power_instance(nl, K, 1000 + s, true);
        const LabeledGraph& lg = *b.labeled;
        RecognitionResult r = recognize_labeled(lg, K);
        if (r.yes && r.witness && verify_labeled_leaf_root(lg, *r.witness, K).ok()) ++accepted;
        else if (first_bad.empty()) first_bad = "exact seed " + std::to_string(1000 + s);
        int m = lg.graph().edge_count();
        if (m == 0) continue;
        Edge e = lg.graph().edges()[s % m];
        int d = lg.range(e.first, e.second).lo;
        Range tight = d > 2 ? Range{2, d - 1} : Range{3, K};
        LabeledGraph t = lg.with_range(e.first, e.second, tight);
        ++tightened;
        RecognitionResult rt = recognize_labeled(t, K);
        if (!rt.yes) {
            ++arbitrated;
        } else if (rt.witness && verify_labeled_leaf_root(t, *rt.witness, K).ok()) {
            ++arbitrated;
            ++still_yes;
        } else if (first_bad.empty()) {
            first_bad = "tightened seed " + std::to_string(1000 + s);
        }
    }
    int small = 0, small_bad = 0;
    for (int n = 1; n <= 4; ++n)
        for (const LabeledGraph& g : reference::labeled_graphs(n, 4)) {
            ++small;
            bool dp = recognize_labeled(g, 4).yes;
            auto bf = reference::brute_force_recognize_labeled(g, 4, 4 * n);
            if (bf.answer == reference::Answer::no_within_budget || dp != bf.yes()) {
                ++small_bad;
                if (first_bad.empty()) first_bad = "small " + write_graph_file(g);
            }
        }
    std::ostringstream d;
    d << accepted << "/100 exact accepted; " << arbitrated << "/" << tightened << " tightenings settled by the verifier ("
      << still_yes << " still yes); " << small << " small labeled graphs, " << small_bad << " disagreements; "
      << seconds_since(t0) << " s";
    if (!first_bad.empty()) d << "; first failure " << first_bad;
    return {accepted == 100 && arbitrated == tightened && small_bad == 0, d.str()};
}

Outcome embedding() {
    int tried = 0, ok = 0;
    for (auto& c : corpus) {
        const Graph& g = c.bundle.graph;
        if (!c.result.witness || g.vertex_count() < 3 || !is_connected(g)) continue;
        ++tried;
        int k = c.bundle.k;
        try {
            ProductGraph p(g, k);
            ProductSubtree s = embed_in_product(g, *c.result.witness, k, p);
            std::vector<int> seen(p.vertex_count(), 0);
            bool injective = true;
            for (int x : s.image)
                if (x >= 0 && seen[x]++) injective = false;
            bool one_per_level = static_cast<int>(s.leaf_of_level.size()) == g.vertex_count();
            for (int v = 0; one_per_level && v < g.vertex_count(); ++v)
                one_per_level = p.base(s.leaf_of_level[v]) == v;
            ok += injective && one_per_level && check_product_subtree(p, s.edge_set, k).ok();
        } catch (const std::exception&) {
        }
    }
    return {tried > 0 && ok == tried, std::to_string(ok) + "/" + std::to_string(tried) + " witnesses embed"};
}

// Counts haspath blocks whose shape differs from k-1 vertex and k edge existentials.
void haspath_shapes(const mso::Formula& f, int k, int& blocks, int& wrong) {
    using mso::Kind;
    using mso::Sort;
    auto guarded = [](const mso::Node& n) {
        if (n.kind != Kind::exists || n.sort != Sort::edge || n.domain != "S") return false;
        const mso::Node& body = *n.kids[0];
        return body.kind == Kind::conj && body.kids[0]->kind == Kind::neg && body.kids[0]->kids[0]->kind == Kind::eq;
    };
    std::function<void(const mso::Formula&)> walk = [&](const mso::Formula& n) {
        if (n->kind == Kind::exists && n->sort == Sort::vertex && n->domain == "V" && guarded(*n->kids[0])) {
            ++blocks;
            wrong += n->vars.size() != static_cast<size_t>(k - 1) || n->kids[0]->vars.size() != static_cast<size_t>(k);
        }
        for (auto& c : n->kids) walk(c);
    };
    walk(f);
}

int edge_conjuncts(const mso::Formula& f) {
    // top-level conjuncts mentioning a range set
    int count = 0;
    std::function<bool(const mso::Formula&)> mentions = [&](const mso::Formula& n) {
        if (n->kind == mso::Kind::in && n->args[1].rfind("I_", 0) == 0) return true;
        for (auto& c : n->kids)
            if (mentions(c)) return true;
        return false;
    };
    for (auto& c : f->kids[0]->kids) count += mentions(c);
    return count;
}

Outcome mso_emission() {
    std::ostringstream d;
    bool shape_ok = true;
    for (int k = 3; k <= 8; ++k) {
        mso::Formula f = mso::emit_recognition_formula(k);
        auto back = mso::parse(mso::render(f));
        bool reparsed = mso::same_structure(back.formula, f) && back.free == mso::recognition_free_variables();
        int blocks = 0, wrong = 0;
        haspath_shapes(f, k, blocks, wrong);
        if (!reparsed || blocks == 0 || wrong) {
            shape_ok = false;
            d << "k=" << k << " shape or reparse mismatch; ";
        }
    }
    int conj = edge_conjuncts(mso::emit_labeled_formula(4));
    if (conj != 6) shape_ok = false;
    d << "recognition formulas k=3..8 " << (shape_ok ? "ok" : "bad") << ", labeled K=4 has " << conj
      << " edge conjuncts; micro-oracle:";

    struct Micro {
        const char* name;
        Graph g;
        int k;
    };
    std::vector<Micro> micro;
    for (int k = 3; k <= 8; ++k) micro.push_back({"K1", graphs::empty(1), k});
    micro.push_back({"2K1", graphs::empty(2), 3});
    micro.push_back({"2K1", graphs::empty(2), 4});
    micro.push_back({"3K1", graphs::empty(3), 3});
    micro.push_back({"K2", graphs::path(2), 3});
    int agree = 0;
    for (auto& m : micro) {
        bool dp = recognize(m.g, m.k).yes;
        ProductGraph p(m.g, m.k);
        bool formula = mso::evaluate_on_product(mso::emit_recognition_formula(m.k), p);
        agree += dp == formula;
        if (dp != formula) d << " " << m.name << "@" << m.k << "(dp " << dp << ", mso " << formula << ")";
    }
    d << "; " << agree << "/" << micro.size() << " agree";
    return {shape_ok && conj == 6 && agree == static_cast<int>(micro.size()), d.str()};
}

Outcome scaling() {
    auto t0 = Clock::now();
    std::ostringstream out, err;
    int code = cli::run({"bench", "--family", "caterpillar", "--sizes", "100,200,400,800,1600", "--no-twins",
                         "--repeat", "3", "--seed", "0"},
                        out, err);
    double secs = seconds_since(t0);
    if (code != cli::kYes) return {false, "bench exited " + std::to_string(code) + ": " + err.str()};
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    std::vector<double> xs, ys, pmax;
    int wmax = 0;
    long n, m, w, k;
    double pm, ms;
    while (in >> n >> m >> w >> k >> pm >> ms) {
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(std::max(ms, 1e-3)));
        pmax.push_back(pm);
        wmax = std::max<int>(wmax, w);
    }
    if (xs.size() != 5) return {false, "unexpected bench output"};
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    double slope = sxy / sxx;
    double lo = *std::min_element(pmax.begin(), pmax.end()), hi = *std::max_element(pmax.begin(), pmax.end());
    double mid = (lo + hi) / 2;
    bool flat = hi - mid <= 0.1 * mid;
    std::ostringstream d;
    d << "slope " << slope << ", pictures_max " << lo << ".." << hi << ", width " << wmax << ", " << secs << " s";
    return {slope <= 1.3 && flat && wmax <= 3 && secs < 900, d.str()};
}

} // namespace

int main() {
    std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"round-trip soundness", round_trip},   {"oracle equivalence", oracle_equivalence},
        {"cycle and bull rejection", rejection}, {"monotonicity", monotonicity},
        {"lift width bound", lift_bound},        {"labeled variant", labeled},
        {"product embedding", embedding},        {"MSO emission", mso_emission},
        {"linear scaling", scaling},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %zu %s: %s (%s) [%.1f s]\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
