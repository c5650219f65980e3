#include "leafpower/picture.hpp"

#include <algorithm>

#include "leafpower/errors.hpp"

namespace leafpower {

int LocalPicture::slot_of(int vertex) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), vertex);
    if (it == vertices.end() || *it != vertex) return -1;
    return static_cast<int>(it - vertices.begin());
}

int LocalPicture::slot_of_node(int node) const {
    return static_cast<int>(std::upper_bound(first.begin(), first.end(), node) - first.begin()) - 1;
}

int LocalPicture::component_count() const {
    int c = 0;
    for (auto x : comp) c = std::max(c, x + 1);
    return c;
}

int LocalPicture::root(int c) const {
    for (int s = 0; s < slots(); ++s)
        if (comp[s] == c && open[s]) return top(s);
    return -1;
}

std::vector<int> LocalPicture::present() const {
    if (residue.empty()) throw invalid_input("picture carries no residues");
    std::vector<int> out;
    for (int s = 0; s < slots(); ++s)
        for (int i = 0; i < len[s]; ++i) {
            int r = ((residue[s] + step[s] * i) % cap + cap) % cap;
            out.push_back(vertices[s] * cap + r);
        }
    std::sort(out.begin(), out.end());
    return out;
}

void LocalPicture::rebuild_offsets() {
    first.assign(slots() + 1, 0);
    for (int s = 0; s < slots(); ++s) first[s + 1] = static_cast<uint8_t>(first[s] + len[s]);
}

void LocalPicture::normalize() {
    uint8_t remap[256];
    std::fill(std::begin(remap), std::end(remap), 0xFF);
    uint8_t next = 0;
    for (auto& c : comp) {
        if (remap[c] == 0xFF) remap[c] = next++;
        c = remap[c];
    }
    residue.clear();
    step.clear();
}

std::string LocalPicture::key() const {
    int S = slots(), N = nodes();
    std::string k;
    k.reserve(1 + 3 * S + N + N * (N - 1) / 2);
    k.push_back(static_cast<char>(S));
    for (int s = 0; s < S; ++s) {
        k.push_back(static_cast<char>(len[s] | (open[s] ? 0x80 : 0)));
        k.push_back(static_cast<char>(comp[s]));
        k.push_back(static_cast<char>(par[s]));
    }
    for (int x = 0; x < N; ++x) k.push_back(static_cast<char>(mu[x]));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) k.push_back(static_cast<char>(dist[a * N + b]));
    if (!residue.empty())
        for (int s = 0; s < S; ++s) {
            k.push_back(static_cast<char>(residue[s]));
            k.push_back(static_cast<char>(step[s]));
        }
    return k;
}

LocalPicture LocalPicture::from_key(const std::string& key, const std::vector<int>& vertices, int cap) {
    LocalPicture p;
    p.cap = cap;
    p.vertices = vertices;
    size_t at = 0;
    auto next = [&]() -> uint8_t {
        if (at >= key.size()) throw internal_error("truncated picture key");
        return static_cast<uint8_t>(key[at++]);
    };
    int S = next();
    if (S != static_cast<int>(vertices.size())) throw internal_error("picture key does not match bag");
    p.len.resize(S);
    p.open.resize(S);
    p.comp.resize(S);
    p.par.resize(S);
    for (int s = 0; s < S; ++s) {
        uint8_t l = next();
        p.len[s] = l & 0x7F;
        p.open[s] = (l & 0x80) ? 1 : 0;
        p.comp[s] = next();
        p.par[s] = next();
    }
    p.rebuild_offsets();
    int N = p.nodes();
    p.mu.resize(N);
    for (int x = 0; x < N; ++x) p.mu[x] = next();
    p.dist.assign(N * N, 0);
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) p.dist[a * N + b] = p.dist[b * N + a] = next();
    if (at < key.size()) {
        p.residue.resize(S);
        p.step.resize(S);
        for (int s = 0; s < S; ++s) {
            p.residue[s] = next();
            p.step[s] = static_cast<int8_t>(next());
        }
    }
    return p;
}

std::string canonical_key(const LocalPicture& p) {
    LocalPicture q = p;
    auto res = q.residue;
    auto st = q.step;
    q.normalize();
    q.residue = res;
    q.step = st;
    return q.key();
}

std::vector<LocalPicture> leaf_bag_pictures(int v, int k) {
    std::vector<LocalPicture> out;
    for (int c = 1; c <= k; ++c)
        for (int r = 0; r < k; ++r)
            for (int st : {+1, -1}) {
                if (c == 1 && st == -1) continue;  // a single node has no orientation
                LocalPicture p;
                p.cap = k;
                p.vertices = {v};
                p.len = {static_cast<uint8_t>(c)};
                p.open = {1};
                p.comp = {0};
                p.par = {kNoParent};
                p.rebuild_offsets();
                p.mu.assign(c, kFar);
                p.dist.assign(c * c, 0);
                for (int a = 0; a < c; ++a)
                    for (int b = 0; b < c; ++b) p.dist[a * c + b] = static_cast<uint8_t>(std::abs(a - b));
                p.residue = {static_cast<uint8_t>(r)};
                p.step = {static_cast<int8_t>(st)};
                out.push_back(std::move(p));
            }
    return out;
}

} // namespace leafpower
