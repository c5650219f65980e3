#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/picture.hpp"
#include "leafpower/treedecomp.hpp"

namespace leafpower {

struct Limits {
    std::size_t max_pictures_per_bag = 4'000'000;
    double max_seconds = 0;          // 0 = unlimited
    bool reduce_twins = true;        // collapse true twins before running the DP
    std::string trace_path;          // optional per-bag TSV trace
};

struct Stats {
    int width = -1;   // largest base decomposition width over components
    int k = 0;
    int bags = 0;
    std::size_t pictures_max = 0;
    std::size_t pictures_total = 0;
    std::vector<std::size_t> pictures_per_bag;
    double millis = 0;
};

struct RecognitionResult {
    bool yes = false;
    std::optional<LeafRootTree> witness;             // whole graph, components joined under one root
    std::vector<LeafRootTree> component_witnesses;   // one per connected component, vertices renumbered
    std::vector<std::vector<int>> components;        // component -> base vertices
    Stats stats;
};

struct resource_cap : std::runtime_error {
    Stats stats;
    resource_cap(const std::string& what, Stats s) : std::runtime_error(what), stats(std::move(s)) {}
};

RecognitionResult recognize(const Graph& g, int k, const Limits& limits = {});
RecognitionResult recognize_labeled(const LabeledGraph& g, int K, const Limits& limits = {});

// Constraints a transition needs about the base graph.
struct DPContext {
    const Graph* g = nullptr;
    const LabeledGraph* labeled = nullptr;  // when set, distances must fall inside edge ranges
    int cap = 0;

    bool adjacent(int u, int v) const { return g->has_edge(u, v); }
    // Whether a leaf distance (kFar for beyond cap) is acceptable between u and v.
    bool distance_ok(int u, int v, uint8_t d) const;
};

// Single-bag transitions over stored (normalised) pictures. Results are deduplicated.
std::vector<LocalPicture> introduce_transition(const std::vector<LocalPicture>& child, int v, const DPContext& ctx);
std::vector<LocalPicture> forget_transition(const std::vector<LocalPicture>& child, int v, const DPContext& ctx);
std::vector<LocalPicture> edge_transition(const std::vector<LocalPicture>& child, Edge e, const DPContext& ctx);
std::vector<LocalPicture> join_transition(const std::vector<LocalPicture>& left, const std::vector<LocalPicture>& right,
                                          const DPContext& ctx);
// Quotient of raw leaf pictures as stored by the DP.
std::vector<LocalPicture> stored_leaf_pictures(int v, int k);
// Whether the picture survives forgetting every remaining vertex.
bool root_accepts(const LocalPicture& p, const DPContext& ctx);

// Full DP over an extra-nice decomposition of a connected graph with >= 3 vertices.
// Returns a verified witness or nullopt.
struct DPRun {
    std::optional<LeafRootTree> witness;
    std::size_t pictures_max = 0;
    std::size_t pictures_total = 0;
    std::vector<std::size_t> pictures_per_bag;
};
DPRun run_dp(const NiceDecomposition& d, const DPContext& ctx, const Limits& limits, double deadline_ms);

// Tree whose leaves are components' roots joined through paths of `path_len` edges.
LeafRootTree join_under_root(const std::vector<LeafRootTree>& parts, const std::vector<std::vector<int>>& vertex_of,
                             int n, int path_len);

} // namespace leafpower
