#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subturan/bitset.hpp"

namespace subturan {

// Simple undirected graph on dense vertex ids 0..n-1. No loops, no parallel
// edges. Adjacency rows are bitsets; treat instances as frozen once shared.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
    }

    // Duplicate additions are no-ops; self-loops are rejected.
    bool add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loop rejected");
        if (adj_[u].test(v)) return false;
        adj_[u].set(v);
        adj_[v].set(u);
        ++m_;
        return true;
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && adj_[u].test(v);
    }

    const Bitset& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }
    int degree(int v) const { return neighbors(v).count(); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }
    int min_degree() const {
        if (n_ == 0) return 0;
        int d = degree(0);
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    // Edges as normalized (u < v) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        es.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v = adj_[u].find_next(u); v >= 0; v = adj_[u].find_next(v))
                es.emplace_back(u, v);
        return es;
    }

    // Subgraph induced on `keep`; old_ids[i], when requested, is the original
    // id of new vertex i.
    Graph induced(const Bitset& keep, std::vector<int>* old_ids = nullptr) const {
        std::vector<int> verts = keep.to_vector();
        std::vector<int> newid(n_, -1);
        for (std::size_t i = 0; i < verts.size(); ++i) newid[verts[i]] = static_cast<int>(i);
        Graph g(static_cast<int>(verts.size()));
        for (int u : verts)
            for (int v = adj_[u].find_next(u); v >= 0; v = adj_[u].find_next(v))
                if (newid[v] >= 0) g.add_edge(newid[u], newid[v]);
        if (old_ids) *old_ids = std::move(verts);
        return g;
    }

    std::vector<int> degree_sequence() const {
        std::vector<int> d(n_);
        for (int v = 0; v < n_; ++v) d[v] = degree(v);
        std::sort(d.begin(), d.end());
        return d;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Bitset> adj_;
};

// Intersection of the neighbor sets of S. |S| = 1 returns that vertex's
// full neighborhood.
inline Bitset common_neighborhood(const Graph& g, const std::vector<int>& s) {
    if (s.empty()) throw std::invalid_argument("common_neighborhood: empty vertex set");
    for (int v : s) g.check_vertex(v);
    Bitset r = g.neighbors(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) r &= g.neighbors(s[i]);
    return r;
}

// Shortest cycle length; nullopt for forests. BFS from every vertex; the
// first non-tree edge seen from root r closes a cycle of length
// dist[u]+dist[v]+1, and minimizing over roots is exact.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> dist(n), parent(n);
    for (int r = 0; r < n; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[r] = 0;
        q.push(r);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (best > 0 && 2 * dist[u] >= best) continue;
            const Bitset& nb = g.neighbors(u);
            for (int v = nb.find_first(); v >= 0; v = nb.find_next(v)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push(v);
                } else if (v != parent[u]) {
                    int len = dist[u] + dist[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

// Graph plus a certified bipartition. Every edge must cross the parts.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(Graph g, Bitset part_a, Bitset part_b)
        : g_(std::move(g)), a_(std::move(part_a)), b_(std::move(part_b)) {
        const int n = g_.vertex_count();
        if (a_.capacity() != n || b_.capacity() != n)
            throw std::invalid_argument("bipartition size mismatch");
        for (int v = 0; v < n; ++v) {
            bool ina = a_.test(v), inb = b_.test(v);
            if (ina == inb) throw std::invalid_argument("parts must partition the vertex set");
        }
        for (auto [u, v] : g_.edges())
            if (a_.test(u) == a_.test(v))
                throw std::invalid_argument("edge inside one part");
    }

    const Graph& graph() const { return g_; }
    const Bitset& part_a() const { return a_; }
    const Bitset& part_b() const { return b_; }
    std::vector<int> a_vertices() const { return a_.to_vector(); }
    std::vector<int> b_vertices() const { return b_.to_vector(); }
    int size_a() const { return a_.count(); }
    int size_b() const { return b_.count(); }

    // |A|/|B| within [1/2, 2].
    bool is_balanced() const {
        int a = size_a(), b = size_b();
        return a <= 2 * b && b <= 2 * a;
    }

private:
    Graph g_;
    Bitset a_, b_;
};

struct NotBipartite {
    std::vector<int> odd_cycle; // closed walk of odd length, first != last omitted
};

using BipartitionResult = std::variant<BipartiteGraph, NotBipartite>;

// 2-color by BFS per component; on failure return an odd cycle built from
// the two tree paths of a monochromatic edge.
inline BipartitionResult bipartition_of(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1), parent(n, -1);
    Bitset a(n), b(n);
    for (int r = 0; r < n; ++r) {
        if (color[r] >= 0) continue;
        color[r] = 0;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            const Bitset& nb = g.neighbors(u);
            for (int v = nb.find_first(); v >= 0; v = nb.find_next(v)) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    parent[v] = u;
                    q.push(v);
                } else if (color[v] == color[u]) {
                    // walk both endpoints up to their lowest common ancestor
                    std::vector<int> pu{u}, pv{v};
                    auto depth = [&](int x) {
                        int d = 0;
                        while (parent[x] >= 0) { x = parent[x]; ++d; }
                        return d;
                    };
                    int du = depth(u), dv = depth(v);
                    int x = u, y = v;
                    while (du > dv) { x = parent[x]; pu.push_back(x); --du; }
                    while (dv > du) { y = parent[y]; pv.push_back(y); --dv; }
                    while (x != y) {
                        x = parent[x]; pu.push_back(x);
                        y = parent[y]; pv.push_back(y);
                    }
                    std::vector<int> cyc(pu.begin(), pu.end());
                    pv.pop_back(); // shared LCA appears once
                    for (auto it = pv.rbegin(); it != pv.rend(); ++it) cyc.push_back(*it);
                    return NotBipartite{std::move(cyc)};
                }
            }
        }
    }
    for (int v = 0; v < n; ++v) (color[v] == 0 ? a : b).set(v);
    return BipartiteGraph(g, std::move(a), std::move(b));
}

// Injective edge-preserving map pattern -> host.
struct Embedding {
    Graph pattern;
    Graph host;
    std::vector<int> map; // pattern vertex -> host vertex

    bool validate() const {
        if (static_cast<int>(map.size()) != pattern.vertex_count()) return false;
        std::vector<char> used(host.vertex_count(), 0);
        for (int h : map) {
            if (h < 0 || h >= host.vertex_count() || used[h]) return false;
            used[h] = 1;
        }
        for (auto [u, v] : pattern.edges())
            if (!host.has_edge(map[u], map[v])) return false;
        return true;
    }
};

} // namespace subturan
