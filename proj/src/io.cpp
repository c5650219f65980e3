#include "leafpower/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "leafpower/errors.hpp"

namespace leafpower {

LabeledGraph GraphFile::as_labeled(int K) const {
    if (ranges) return LabeledGraph(graph, *ranges, K);
    return LabeledGraph::uniform(graph, K);
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

long to_int(const std::string& s, int line) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error(line, "expected an integer, got '" + s + "'");
    }
}

} // namespace

GraphFile parse_graph_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    long n = -1, m = -1;
    int mode = 0;  // 1 plain, 2 labeled
    std::vector<Edge> edges;
    std::map<Edge, Range> ranges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++no;
        auto t = tokens(line);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "p") {
            if (n >= 0) throw parse_error(no, "second header line");
            if (t.size() != 4 || t[1] != "lp") throw parse_error(no, "header must be 'p lp <n> <m>'");
            n = to_int(t[2], no);
            m = to_int(t[3], no);
            if (n < 0 || m < 0) throw parse_error(no, "negative size in header");
            continue;
        }
        if (t[0] != "e") throw parse_error(no, "unknown line type '" + t[0] + "'");
        if (n < 0) throw parse_error(no, "edge before header");
        int kind = t.size() == 3 ? 1 : t.size() == 5 ? 2 : 0;
        if (kind == 0) throw parse_error(no, "edge line needs 2 or 4 numbers");
        if (mode && mode != kind) throw parse_error(no, "mixed labeled and unlabeled edges");
        mode = kind;
        long u = to_int(t[1], no), v = to_int(t[2], no);
        if (u < 1 || u > n || v < 1 || v > n) throw parse_error(no, "vertex id out of range");
        if (u == v) throw parse_error(no, "self-loop");
        Edge e{static_cast<int>(std::min(u, v) - 1), static_cast<int>(std::max(u, v) - 1)};
        if (!seen.insert(e).second) throw parse_error(no, "duplicate edge");
        edges.push_back(e);
        if (kind == 2) {
            long lo = to_int(t[3], no), hi = to_int(t[4], no);
            if (lo < 2 || lo > hi) throw parse_error(no, "range must satisfy 2 <= k1 <= k2");
            ranges[e] = Range{static_cast<int>(lo), static_cast<int>(hi)};
        }
    }
    if (n < 0) throw parse_error(0, "missing header line 'p lp <n> <m>'");
    if (static_cast<long>(edges.size()) != m)
        throw parse_error(0, "header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    GraphFile f;
    f.graph = Graph(static_cast<int>(n), edges);
    if (mode == 2) {
        std::vector<Range> r;
        for (auto& e : f.graph.edges()) r.push_back(ranges.at(e));
        f.ranges = r;
    }
    return f;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path);
    out << text;
}

GraphFile read_graph_file(const std::string& path) { return parse_graph_file(read_text_file(path)); }

std::string write_graph_file(const Graph& g) {
    std::ostringstream o;
    o << "p lp " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) o << "e " << u + 1 << ' ' << v + 1 << '\n';
    return o.str();
}

std::string write_graph_file(const LabeledGraph& g) {
    std::ostringstream o;
    const Graph& h = g.graph();
    o << "c cap " << g.cap() << '\n';
    o << "p lp " << h.vertex_count() << ' ' << h.edge_count() << '\n';
    for (int i = 0; i < h.edge_count(); ++i) {
        auto [u, v] = h.edges()[i];
        o << "e " << u + 1 << ' ' << v + 1 << ' ' << g.ranges()[i].lo << ' ' << g.ranges()[i].hi << '\n';
    }
    return o.str();
}

std::string write_witness(const LeafRootTree& t, const Graph& g) {
    std::ostringstream o;
    for (int p : t.parent) o << p << '\n';
    o << "leaves\n";
    for (int x = 0; x < t.node_count(); ++x)
        if (t.leaf_map[x] >= 0) o << x << ' ' << g.name(t.leaf_map[x]) << '\n';
    return o.str();
}

LeafRootTree parse_witness(const std::string& text, const Graph& g) {
    std::map<std::string, int> by_name;
    for (int v = 0; v < g.vertex_count(); ++v) by_name[g.name(v)] = v;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    bool in_leaves = false;
    LeafRootTree t;
    std::vector<std::pair<long, int>> maps;
    while (std::getline(in, line)) {
        ++no;
        auto tk = tokens(line);
        if (tk.empty() || tk[0] == "#") continue;
        if (tk[0] == "leaves") {
            in_leaves = true;
            continue;
        }
        if (!in_leaves) {
            if (tk.size() != 1) throw parse_error(no, "parent line must hold one number");
            t.parent.push_back(static_cast<int>(to_int(tk[0], no)));
            continue;
        }
        if (tk.size() != 2) throw parse_error(no, "leaf line must be '<node> <name>'");
        auto it = by_name.find(tk[1]);
        if (it == by_name.end()) throw parse_error(no, "unknown vertex '" + tk[1] + "'");
        maps.emplace_back(to_int(tk[0], no), it->second);
    }
    int N = t.node_count();
    if (N == 0) throw parse_error(0, "empty witness");
    t.root = -1;
    for (int x = 0; x < N; ++x) {
        if (t.parent[x] < 0 || t.parent[x] >= N) throw parse_error(x + 1, "parent out of range");
        if (t.parent[x] == x) {
            if (t.root >= 0) throw parse_error(x + 1, "second root");
            t.root = x;
        }
    }
    if (t.root < 0) throw parse_error(0, "no root (a node whose parent is itself)");
    t.leaf_map.assign(N, -1);
    for (auto [x, v] : maps) {
        if (x < 0 || x >= N) throw parse_error(0, "leaf node " + std::to_string(x) + " out of range");
        t.leaf_map[x] = v;
    }
    return t;
}

std::string write_newick(const LeafRootTree& t, const Graph& g) {
    std::vector<std::vector<int>> kids(t.node_count());
    for (int x = 0; x < t.node_count(); ++x)
        if (t.parent[x] != x) kids[t.parent[x]].push_back(x);
    std::string out;
    // iterative post-order emission
    std::vector<std::pair<int, size_t>> stack{{t.root, 0}};
    while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i == 0 && !kids[x].empty()) out += '(';
        if (i < kids[x].size()) {
            if (i > 0) out += ',';
            int c = kids[x][i++];
            stack.push_back({c, 0});
            continue;
        }
        if (!kids[x].empty()) out += ')';
        if (t.leaf_map[x] >= 0) out += g.name(t.leaf_map[x]);
        stack.pop_back();
    }
    return out + ";\n";
}

} // namespace leafpower
