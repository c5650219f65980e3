#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace leafpower {

// Distance values inside a picture.
constexpr uint8_t kFar = 0xFE;   // finite, but beyond the cap
constexpr uint8_t kApart = 0xFF; // different components

// Parent entries of a chain top.
constexpr uint8_t kNoParent = 0xFF;      // open chain
constexpr uint8_t kHiddenParent = 0xFE;  // parent already forgotten

inline uint8_t capped_add(uint8_t a, uint8_t b, int cap) {
    if (a == kApart || b == kApart) return kApart;
    int s = int(a) + int(b);
    return s > cap ? kFar : static_cast<uint8_t>(s);
}

// State of a partial leaf root restricted to one bag.
//
// Every bag vertex v owns a vertical chain of tree nodes (v,0) .. (v,len-1); (v,0) is the
// leaf standing for v. Chains are linked into components by edges from a chain top to an
// inner node of another chain. A chain is "open" while its top has no parent; an open
// chain can still grow upwards, so `len` is the smallest length seen so far. Each
// component has at most one open chain, whose top is the component root. A component with
// no open chain has a forgotten root.
struct LocalPicture {
    int cap = 0;                  // k, or K for labeled graphs
    std::vector<int> vertices;    // slot -> base vertex, ascending
    std::vector<uint8_t> len;     // per slot
    std::vector<uint8_t> open;    // per slot
    std::vector<uint8_t> comp;    // per slot, numbered in order of first slot
    std::vector<uint8_t> par;     // per slot: parent node of the top, kNoParent or kHiddenParent
    std::vector<uint8_t> first;   // node offset per slot, size slots()+1
    std::vector<uint8_t> mu;      // per node: distance to nearest forgotten leaf, kFar if none within cap
    std::vector<uint8_t> dist;    // nodes x nodes, kApart across components
    // Residue placement on the product cycle. Only raw pictures carry it; the DP stores
    // pictures modulo rotation and reflection of each component, where it is empty.
    std::vector<uint8_t> residue;  // per slot: residue of (v,0)
    std::vector<int8_t> step;      // per slot: +1 or -1 going up the chain

    int slots() const { return static_cast<int>(vertices.size()); }
    int nodes() const { return first.empty() ? 0 : first.back(); }
    int node(int slot, int i) const { return first[slot] + i; }
    int top(int slot) const { return first[slot] + len[slot] - 1; }
    int slot_of(int vertex) const;
    int slot_of_node(int node) const;
    uint8_t d(int a, int b) const { return dist[a * nodes() + b]; }
    uint8_t& d(int a, int b) { return dist[a * nodes() + b]; }
    int component_count() const;
    // Root node of a component, or -1 when the root has been forgotten.
    int root(int c) const;
    // Product vertices used (v*cap + residue); requires residues.
    std::vector<int> present() const;

    void rebuild_offsets();
    // Renumber components by first slot and drop residues.
    void normalize();
    std::string key() const;
    static LocalPicture from_key(const std::string& key, const std::vector<int>& vertices, int cap);
};

std::string canonical_key(const LocalPicture& p);

// Raw pictures of a leaf bag: one per arc of the cycle and orientation.
std::vector<LocalPicture> leaf_bag_pictures(int v, int k);

} // namespace leafpower
