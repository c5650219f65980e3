#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/leafroot.hpp"

// Slow, independent oracles used to validate the DP.
namespace leafpower::reference {

struct TreeShape {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> leaves() const;  // vertices of degree <= 1
};

// Unlabeled free trees on exactly n vertices, each isomorphism class once.
std::vector<TreeShape> free_trees(int n);
// Trees with exactly leaf_count leaves and at most max_vertices vertices (max_vertices <= 18).
void for_each_tree(int max_vertices, int leaf_count, const std::function<void(const TreeShape&)>& fn);
std::vector<TreeShape> enumerate_trees(int max_vertices, int leaf_count);
// Isomorphism classes of all labelled trees on n vertices (n <= 9), computed from Pruefer
// codes; result[l] counts classes with l leaves.
std::vector<long> tree_counts_by_pruefer(int n);
std::string tree_canonical_form(const TreeShape& t);

enum class Answer { yes, no, no_within_budget };
const char* to_string(Answer a);

struct BruteResult {
    Answer answer = Answer::no_within_budget;
    std::optional<LeafRootTree> witness;
    long shapes_tried = 0;
    bool yes() const { return answer == Answer::yes; }
};

// Exhaustive search over trees with at most vertex_budget vertices. "no" is reported only
// when g is connected and vertex_budget >= n*k; otherwise a failed search is no_within_budget.
BruteResult brute_force_recognize(const Graph& g, int k, int vertex_budget);
BruteResult brute_force_recognize_labeled(const LabeledGraph& g, int K, int vertex_budget);

bool recognize_k2(const Graph& g);
bool recognize_k3(const Graph& g);
std::vector<int> lex_bfs(const Graph& g);
bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order);
bool is_chordal(const Graph& g);
bool contains_induced(const Graph& g, const Graph& pattern);

// One representative per isomorphism class of connected graphs on n vertices (n <= 7).
std::vector<Graph> connected_graphs(int n);
// One representative per isomorphism class of graphs on n vertices (n <= 4) whose edges
// carry ranges inside [2, K].
std::vector<LabeledGraph> labeled_graphs(int n, int K);

struct InstanceBundle {
    Graph graph;
    std::optional<LabeledGraph> labeled;  // exact tree distances on every edge
    LeafRootTree witness;
    int k = 0;
    uint64_t seed = 0;
};

// Random tree with n_leaves leaves and at most n_leaves*k vertices, with its k-leaf power.
InstanceBundle random_leaf_power_instance(int n_leaves, int k, uint64_t seed, bool labeled = false);

// Caterpillar 4-leaf power on n leaves: each spine node carries at most two pendant leaves
// and any three consecutive spine nodes carry at most four, so the treewidth stays <= 3.
InstanceBundle caterpillar_instance(int n, uint64_t seed);

// Directory with graph.gr, witness.tree and meta.txt (key=value lines).
void write_bundle(const std::string& dir, const InstanceBundle& b);
InstanceBundle read_bundle(const std::string& dir);

} // namespace leafpower::reference
