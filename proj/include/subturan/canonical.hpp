#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "subturan/graph.hpp"

namespace subturan {

namespace detail {

// Stable 1-dimensional color refinement. Colors are dense ranks of
// (old color, sorted neighbor-color multiset) signatures, so they are
// independent of vertex labels given label-independent input colors.
inline void refine_colors(const Graph& g, std::vector<int>& color) {
    const int n = g.vertex_count();
    int classes = 0;
    for (int v = 0; v < n; ++v) classes = std::max(classes, color[v] + 1);
    while (true) {
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> s;
            s.push_back(color[v]);
            const Bitset& nb = g.neighbors(v);
            for (int u = nb.find_first(); u >= 0; u = nb.find_next(u)) s.push_back(color[u]);
            std::sort(s.begin() + 1, s.end());
            sig[v] = {std::move(s), v};
        }
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return sig[a].first < sig[b].first; });
        int c = 0;
        std::vector<int> next(n, 0);
        for (int i = 0; i < n; ++i) {
            if (i > 0 && sig[order[i]].first != sig[order[i - 1]].first) ++c;
            next[order[i]] = c;
        }
        if (c + 1 == classes) { color = next; return; }
        classes = c + 1;
        color = next;
    }
}

inline std::string certificate(const Graph& g, const std::vector<int>& perm) {
    const int n = g.vertex_count();
    std::string cert;
    cert.reserve(4 + (n * (n - 1) / 2 + 7) / 8);
    for (int s = 24; s >= 0; s -= 8) cert.push_back(static_cast<char>((n >> s) & 0xff));
    unsigned char acc = 0;
    int nb = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            acc = static_cast<unsigned char>((acc << 1) | (g.has_edge(perm[i], perm[j]) ? 1 : 0));
            if (++nb == 8) { cert.push_back(static_cast<char>(acc)); acc = 0; nb = 0; }
        }
    if (nb) cert.push_back(static_cast<char>(acc << (8 - nb)));
    return cert;
}

struct CanonSearch {
    const Graph& g;
    std::string best;
    std::uint64_t leaves = 0;

    explicit CanonSearch(const Graph& graph) : g(graph) {}

    void run(std::vector<int> color) {
        refine_colors(g, color);
        explore(color);
    }

    void explore(const std::vector<int>& color) {
        const int n = g.vertex_count();
        // locate the smallest non-singleton cell (lowest color on ties)
        int classes = 0;
        for (int v = 0; v < n; ++v) classes = std::max(classes, color[v] + 1);
        std::vector<int> size(classes, 0);
        for (int v = 0; v < n; ++v) ++size[color[v]];
        int target = -1;
        for (int c = 0; c < classes; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;

        if (target < 0) {
            std::vector<int> perm(n);
            std::vector<int> pos(n);
            for (int v = 0; v < n; ++v) pos[v] = color[v];
            for (int v = 0; v < n; ++v) perm[pos[v]] = v;
            std::string cert = certificate(g, perm);
            ++leaves;
            if (best.empty() || cert < best) best = std::move(cert);
            return;
        }

        // branch on each vertex of the cell; swapping twins (N(u)\{v} =
        // N(v)\{u}) is an automorphism, so only one per twin class is tried
        std::vector<int> cell;
        for (int v = 0; v < n; ++v)
            if (color[v] == target) cell.push_back(v);
        auto twins = [&](int u, int v) {
            Bitset nu = g.neighbors(u), nv = g.neighbors(v);
            nu.reset(v);
            nv.reset(u);
            return nu == nv;
        };
        std::vector<int> tried;
        for (int v : cell) {
            bool twin = false;
            for (int u : tried)
                if (twins(u, v)) { twin = true; break; }
            if (twin) continue;
            tried.push_back(v);
            std::vector<int> child = color;
            child[v] = classes; // fresh cell
            refine_colors(g, child);
            explore(child);
        }
    }
};

} // namespace detail

// Label-invariant byte string: equal iff the graphs are isomorphic.
// Color refinement seeded by degree, then backtracking over refined cells.
inline std::string canonical_form(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = g.degree(v);
    // rank-compress the seed so colors are dense
    {
        std::vector<int> vals = color;
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), color[v]) - vals.begin());
    }
    detail::CanonSearch s(g);
    s.run(std::move(color));
    return s.best;
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (a.degree_sequence() != b.degree_sequence()) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace subturan
