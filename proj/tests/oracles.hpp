#pragma once

// Test-only oracles. Everything here is deliberately naive and shares no
// code path with the algorithms under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "subturan/graph.hpp"

namespace oracles {

using subturan::Graph;

inline Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// Bipartite host with fixed part sizes; vertices 0..a-1 are the A side.
inline Graph random_bipartite(int a, int b, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v)
            if (coin(rng)) g.add_edge(u, a + v);
    return g;
}

inline Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.vertex_count());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

inline std::vector<int> random_permutation(int n, std::mt19937& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Exact girth by edge deletion: for each edge (u,v), the shortest u-v path
// avoiding that edge closes the shortest cycle through it.
inline std::optional<int> girth_by_edge_deletion(const Graph& g) {
    int best = -1;
    for (auto [eu, ev] : g.edges()) {
        std::vector<int> dist(g.vertex_count(), -1);
        std::queue<int> q;
        dist[eu] = 0;
        q.push(eu);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            const auto& nb = g.neighbors(x);
            for (int y = nb.find_first(); y >= 0; y = nb.find_next(y)) {
                if (x == eu && y == ev) continue;
                if (x == ev && y == eu) continue;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
            }
        }
        if (dist[ev] >= 0) {
            int len = dist[ev] + 1;
            if (best < 0 || len < best) best = len;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

// Odd closed walks exist iff odd cycles do: check trace of A^k for odd k.
inline bool has_odd_cycle_by_walks(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0)), p = {};
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    p = a;
    for (int k = 1; k <= n; ++k) {
        if (k % 2 == 1) {
            for (int i = 0; i < n; ++i)
                if (p[i][i] > 0) return true;
        }
        // p = min(p*a, cap) to avoid overflow; positivity is all we need
        std::vector<std::vector<std::int64_t>> nx(n, std::vector<std::int64_t>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (p[i][l])
                    for (int j = 0; j < n; ++j)
                        if (a[l][j]) nx[i][j] = 1;
        p = std::move(nx);
    }
    return false;
}

// All-injections subgraph test: tries every injective vertex map.
inline bool contains_subgraph_by_injections(const Graph& host, const Graph& pat) {
    const int nh = host.vertex_count(), np = pat.vertex_count();
    if (np > nh) return false;
    std::vector<int> map(np, -1);
    std::vector<char> used(nh, 0);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == np) return true;
        for (int h = 0; h < nh; ++h) {
            if (used[h]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (pat.has_edge(j, i) && !host.has_edge(map[j], h)) ok = false;
            if (!ok) continue;
            map[i] = h;
            used[h] = 1;
            if (self(self, i + 1)) return true;
            used[h] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

// Does the graph contain a cycle of length exactly k? DFS over simple paths
// anchored at their smallest vertex.
inline bool contains_cycle_of_length(const Graph& g, int k) {
    const int n = g.vertex_count();
    std::vector<char> inpath(n, 0);
    std::vector<int> path;
    auto rec = [&](auto&& self, int start, int v) -> bool {
        if (static_cast<int>(path.size()) == k)
            return g.has_edge(v, start);
        const auto& nb = g.neighbors(v);
        for (int w = nb.find_first(); w >= 0; w = nb.find_next(w)) {
            if (w <= start || inpath[w]) continue;
            inpath[w] = 1;
            path.push_back(w);
            if (self(self, start, w)) return true;
            path.pop_back();
            inpath[w] = 0;
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        inpath.assign(n, 0);
        path.assign(1, s);
        inpath[s] = 1;
        if (rec(rec, s, s)) return true;
    }
    return false;
}

} // namespace oracles
