#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subturan/graph.hpp"

namespace subturan {

struct PeelReport {
    int input_vertices = 0, input_edges = 0;
    int output_vertices = 0, output_edges = 0;
    std::vector<int> removed;      // in removal order, original vertex ids
    double floor_a = 0, floor_b = 0; // degree floors demanded per side
    int achieved_min_a = 0, achieved_min_b = 0;
    int cut_moves = 0;             // local-switching flips (bipartite_halving only)

    nlohmann::json to_json() const {
        return {{"input_vertices", input_vertices},
                {"input_edges", input_edges},
                {"output_vertices", output_vertices},
                {"output_edges", output_edges},
                {"removed", removed},
                {"floor_a", floor_a},
                {"floor_b", floor_b},
                {"achieved_min_a", achieved_min_a},
                {"achieved_min_b", achieved_min_b},
                {"cut_moves", cut_moves}};
    }
};

// Lemma-2.1(a) style halving, derandomized: start from a proper 2-coloring
// when the graph is bipartite (greedy otherwise), flip any vertex with more
// same-side than cross-side neighbors until none remains (each flip strictly
// grows the cut, so the cut ends >= e/2), keep cross edges only, then peel
// vertices of degree < d_G/4.
inline std::pair<BipartiteGraph, PeelReport> bipartite_halving(const Graph& g) {
    const int n = g.vertex_count();
    if (g.edge_count() < 1) throw std::invalid_argument("bipartite_halving: empty graph");
    const double floor = 2.0 * g.edge_count() / n / 4.0;

    PeelReport rep;
    rep.input_vertices = n;
    rep.input_edges = g.edge_count();
    rep.floor_a = rep.floor_b = floor;

    std::vector<int> side(n, 0);
    if (auto bp = bipartition_of(g); std::holds_alternative<BipartiteGraph>(bp)) {
        const auto& b = std::get<BipartiteGraph>(bp);
        for (int v = 0; v < n; ++v) side[v] = b.part_b().test(v) ? 1 : 0;
    } else {
        for (int v = 0; v < n; ++v) {
            int same = 0, cross = 0;
            const auto& nb = g.neighbors(v);
            for (int u = nb.find_first(); u >= 0 && u < v; u = nb.find_next(u))
                (side[u] == 0 ? same : cross)++;
            side[v] = same > cross ? 1 : 0;
        }
    }
    // local switching; cut size strictly increases with every move
    bool moved = true;
    while (moved) {
        moved = false;
        for (int v = 0; v < n; ++v) {
            int same = 0, cross = 0;
            const auto& nb = g.neighbors(v);
            for (int u = nb.find_first(); u >= 0; u = nb.find_next(u))
                (side[u] == side[v] ? same : cross)++;
            if (same > cross) {
                side[v] = 1 - side[v];
                ++rep.cut_moves;
                moved = true;
            }
        }
    }

    Graph cut(n);
    for (auto [u, v] : g.edges())
        if (side[u] != side[v]) cut.add_edge(u, v);

    // peel below the d_G/4 floor (fixed from the input graph)
    Bitset alive(n);
    for (int v = 0; v < n; ++v) alive.set(v);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = cut.degree(v);
    bool peeled = true;
    while (peeled) {
        peeled = false;
        for (int v = 0; v < n; ++v) {
            if (!alive.test(v)) continue;
            if (deg[v] < floor) {
                alive.reset(v);
                rep.removed.push_back(v);
                const auto& nb = cut.neighbors(v);
                for (int u = nb.find_first(); u >= 0; u = nb.find_next(u))
                    if (alive.test(u)) --deg[u];
                peeled = true;
            }
        }
    }

    std::vector<int> keep_ids;
    Graph sub = cut.induced(alive, &keep_ids);
    Bitset pa(sub.vertex_count()), pb(sub.vertex_count());
    for (std::size_t i = 0; i < keep_ids.size(); ++i)
        (side[keep_ids[i]] == 0 ? pa : pb).set(static_cast<int>(i));
    BipartiteGraph out(sub, pa, pb);

    rep.output_vertices = sub.vertex_count();
    rep.output_edges = sub.edge_count();
    rep.achieved_min_a = rep.achieved_min_b = sub.vertex_count() ? sub.min_degree() : 0;
    return {std::move(out), std::move(rep)};
}

// Lemma 2.1(b): alternately drop A-vertices below d_A/4 and B-vertices below
// d_B/4, with both floors fixed from the input. Keeps >= e/2 edges.
inline std::pair<BipartiteGraph, PeelReport> two_sided_peel(const BipartiteGraph& g) {
    if (g.graph().edge_count() < 1) throw std::invalid_argument("two_sided_peel: no edges");
    const int n = g.graph().vertex_count();
    const double da = static_cast<double>(g.graph().edge_count()) / g.size_a();
    const double db = static_cast<double>(g.graph().edge_count()) / g.size_b();

    PeelReport rep;
    rep.input_vertices = n;
    rep.input_edges = g.graph().edge_count();
    rep.floor_a = da / 4;
    rep.floor_b = db / 4;

    Bitset alive(n);
    for (int v = 0; v < n; ++v) alive.set(v);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.graph().degree(v);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            const Bitset& part = pass == 0 ? g.part_a() : g.part_b();
            double floor = pass == 0 ? da / 4 : db / 4;
            for (int v = part.find_first(); v >= 0; v = part.find_next(v)) {
                if (!alive.test(v) || deg[v] >= floor) continue;
                alive.reset(v);
                rep.removed.push_back(v);
                const auto& nb = g.graph().neighbors(v);
                for (int u = nb.find_first(); u >= 0; u = nb.find_next(u))
                    if (alive.test(u)) --deg[u];
                changed = true;
            }
        }
    }

    std::vector<int> keep_ids;
    Graph sub = g.graph().induced(alive, &keep_ids);
    Bitset pa(sub.vertex_count()), pb(sub.vertex_count());
    for (std::size_t i = 0; i < keep_ids.size(); ++i)
        (g.part_a().test(keep_ids[i]) ? pa : pb).set(static_cast<int>(i));
    BipartiteGraph out(sub, pa, pb);

    rep.output_vertices = sub.vertex_count();
    rep.output_edges = sub.edge_count();
    int mina = -1, minb = -1;
    for (int v = 0; v < sub.vertex_count(); ++v) {
        int d = sub.degree(v);
        if (pa.test(v)) mina = mina < 0 ? d : std::min(mina, d);
        else minb = minb < 0 ? d : std::min(minb, d);
    }
    rep.achieved_min_a = std::max(mina, 0);
    rep.achieved_min_b = std::max(minb, 0);
    return {std::move(out), std::move(rep)};
}

struct ExtractFailed {
    std::string reason;
};

struct AlmostRegularResult {
    BipartiteGraph graph;
    double achieved_k = 0;
    bool within_target = false;
    int window_lo = 0, window_hi = 0; // dyadic degree-class window chosen
    PeelReport halving_report;
};

// Heuristic stand-in for the K-almost-regular balanced extraction (the
// lemma's own proof lives elsewhere): try every contiguous window of dyadic
// degree classes, peel each induced candidate against a max/min ratio of
// target_k, keep the window retaining the most edges, then halve and trim
// the larger side until balanced. The achieved ratio is reported, not
// guaranteed.
inline std::variant<AlmostRegularResult, ExtractFailed>
almost_regular_extract(const Graph& g, double target_k) {
    if (g.edge_count() < 1) return ExtractFailed{"empty graph"};
    if (target_k < 1) throw std::invalid_argument("target_k must be >= 1");
    const int n = g.vertex_count();

    auto dyadic_class = [](int d) {
        int c = 0;
        while ((2 << c) <= d) ++c;
        return c; // d in [2^c, 2^{c+1})
    };
    int max_class = 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > 0) max_class = std::max(max_class, dyadic_class(g.degree(v)));

    int best_edges = -1, best_lo = 0, best_hi = 0;
    Bitset best_alive(n);
    for (int lo = 0; lo <= max_class; ++lo)
        for (int hi = lo; hi <= max_class; ++hi) {
            Bitset alive(n);
            for (int v = 0; v < n; ++v) {
                int d = g.degree(v);
                if (d > 0 && dyadic_class(d) >= lo && dyadic_class(d) <= hi) alive.set(v);
            }
            // peel against the ratio inside the window
            std::vector<int> deg(n, 0);
            int edges = 0;
            for (auto [u, v] : g.edges())
                if (alive.test(u) && alive.test(v)) { ++deg[u]; ++deg[v]; ++edges; }
            bool changed = true;
            while (changed && edges > 0) {
                changed = false;
                int dmax = 0;
                for (int v = alive.find_first(); v >= 0; v = alive.find_next(v))
                    dmax = std::max(dmax, deg[v]);
                for (int v = alive.find_first(); v >= 0; v = alive.find_next(v)) {
                    if (deg[v] * target_k < dmax) {
                        alive.reset(v);
                        const auto& nb = g.neighbors(v);
                        for (int u = nb.find_first(); u >= 0; u = nb.find_next(u))
                            if (alive.test(u)) { --deg[u]; --edges; }
                        changed = true;
                    }
                }
            }
            if (edges > best_edges || (edges == best_edges && hi - lo < best_hi - best_lo)) {
                best_edges = edges;
                best_lo = lo;
                best_hi = hi;
                best_alive = alive;
            }
        }
    if (best_edges <= 0) return ExtractFailed{"no degree window retains an edge"};

    Graph windowed = g.induced(best_alive);
    auto [halved, rep] = bipartite_halving(windowed);

    // trim the larger side to reach |A|/|B| in [1/2, 2]
    Graph cur = halved.graph();
    Bitset parta(cur.vertex_count());
    for (int v : halved.a_vertices()) parta.set(v);
    while (true) {
        int na = 0, nb = 0;
        for (int v = 0; v < cur.vertex_count(); ++v) (parta.test(v) ? na : nb)++;
        if (na == 0 || nb == 0) return ExtractFailed{"balancing emptied one side"};
        if (na <= 2 * nb && nb <= 2 * na) break;
        bool trim_a = na > 2 * nb;
        int victim = -1, vdeg = 0;
        for (int v = 0; v < cur.vertex_count(); ++v) {
            if (parta.test(v) != trim_a) continue;
            int d = cur.degree(v);
            if (victim < 0 || d < vdeg) { victim = v; vdeg = d; }
        }
        Bitset keep(cur.vertex_count());
        for (int v = 0; v < cur.vertex_count(); ++v)
            if (v != victim) keep.set(v);
        std::vector<int> ids;
        Graph next = cur.induced(keep, &ids);
        Bitset nextpa(next.vertex_count());
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (parta.test(ids[i])) nextpa.set(static_cast<int>(i));
        cur = std::move(next);
        parta = std::move(nextpa);
    }
    // drop isolated vertices left by trimming
    {
        Bitset keep(cur.vertex_count());
        for (int v = 0; v < cur.vertex_count(); ++v)
            if (cur.degree(v) > 0) keep.set(v);
        if (keep.count() == 0) return ExtractFailed{"balancing emptied the graph"};
        std::vector<int> ids;
        Graph next = cur.induced(keep, &ids);
        Bitset nextpa(next.vertex_count());
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (parta.test(ids[i])) nextpa.set(static_cast<int>(i));
        cur = std::move(next);
        parta = std::move(nextpa);
    }

    Bitset partb(cur.vertex_count());
    for (int v = 0; v < cur.vertex_count(); ++v)
        if (!parta.test(v)) partb.set(v);
    if (parta.count() == 0 || partb.count() == 0)
        return ExtractFailed{"balancing emptied one side"};

    AlmostRegularResult res{BipartiteGraph(cur, parta, partb), 0, false, best_lo, best_hi, rep};
    res.achieved_k = static_cast<double>(cur.max_degree()) / cur.min_degree();
    res.within_target = res.achieved_k <= target_k;
    return res;
}

struct LayeredDecomposition {
    int root = 0;
    std::vector<std::vector<int>> layers; // layers[i] = vertices at distance i
    // edges between consecutive layers, normalized (shallow, deep)
    std::vector<std::vector<std::pair<int, int>>> cross_edges;

    const std::vector<int>& layer(int i) const { return layers.at(i); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["root"] = root;
        j["layer_sizes"] = nlohmann::json::array();
        for (const auto& l : layers) j["layer_sizes"].push_back(l.size());
        return j;
    }
};

inline LayeredDecomposition bfs_layers(const Graph& g, int root, int depth) {
    g.check_vertex(root);
    LayeredDecomposition out;
    out.root = root;
    std::vector<int> dist(g.vertex_count(), -1);
    dist[root] = 0;
    std::vector<int> frontier{root};
    out.layers.push_back(frontier);
    for (int d = 1; d <= depth; ++d) {
        std::vector<int> next;
        for (int u : frontier) {
            const auto& nb = g.neighbors(u);
            for (int v = nb.find_first(); v >= 0; v = nb.find_next(v))
                if (dist[v] < 0) {
                    dist[v] = d;
                    next.push_back(v);
                }
        }
        std::sort(next.begin(), next.end());
        out.layers.push_back(next);
        frontier = out.layers.back();
        if (frontier.empty()) break;
    }
    out.cross_edges.resize(out.layers.size() > 1 ? out.layers.size() - 1 : 0);
    for (auto [u, v] : g.edges()) {
        if (dist[u] < 0 || dist[v] < 0) continue;
        if (dist[u] + 1 == dist[v]) out.cross_edges[dist[u]].emplace_back(u, v);
        else if (dist[v] + 1 == dist[u]) out.cross_edges[dist[v]].emplace_back(v, u);
    }
    return out;
}

struct RegularTree {
    int root = 0;
    std::vector<int> t1;                  // selected children of the root
    std::map<int, std::vector<int>> children; // v in t1 -> claimed L2 vertices
    int d1 = 0, d2 = 0;
    double slack = 0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["root"] = root;
        j["t1"] = t1;
        j["children"] = nlohmann::json::object();
        for (const auto& [v, kids] : children) j["children"][std::to_string(v)] = kids;
        j["d1"] = d1;
        j["d2"] = d2;
        j["slack"] = slack;
        return j;
    }
};

struct Infeasible {
    RegularTree partial;
    std::string reason;
};

// Depth-2 essentially-regular tree extraction: walk L1 in decreasing-degree
// order, let each kept vertex claim ceil(slack*d2) unclaimed L2 neighbors,
// succeed when at least ceil(slack*d1) vertices could claim.
inline std::variant<RegularTree, Infeasible>
extract_regular_tree(const Graph& g, int root, int d1, int d2, double slack) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("extract_regular_tree: d1,d2 >= 1");
    if (slack <= 0 || slack > 1) throw std::invalid_argument("extract_regular_tree: slack in (0,1]");
    auto layers = bfs_layers(g, root, 2);
    const auto& l1 = layers.layers.size() > 1 ? layers.layer(1) : std::vector<int>{};
    const auto& l2 = layers.layers.size() > 2 ? layers.layer(2) : std::vector<int>{};

    const int need_children = static_cast<int>(std::ceil(slack * d2));
    const int need_t1 = static_cast<int>(std::ceil(slack * d1));

    Bitset in_l2(g.vertex_count());
    for (int v : l2) in_l2.set(v);

    std::vector<int> order(l1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = (g.neighbors(a) & in_l2).count();
        int db = (g.neighbors(b) & in_l2).count();
        if (da != db) return da > db;
        return a < b;
    });

    RegularTree tree;
    tree.root = root;
    tree.d1 = d1;
    tree.d2 = d2;
    tree.slack = slack;
    Bitset claimed(g.vertex_count());
    for (int v : order) {
        Bitset avail = g.neighbors(v) & in_l2;
        avail.subtract(claimed);
        if (avail.count() < need_children) continue; // skip v
        std::vector<int> kids;
        for (int u = avail.find_first(); u >= 0 && static_cast<int>(kids.size()) < need_children;
             u = avail.find_next(u)) {
            kids.push_back(u);
            claimed.set(u);
        }
        tree.t1.push_back(v);
        tree.children[v] = std::move(kids);
    }
    std::sort(tree.t1.begin(), tree.t1.end());
    if (static_cast<int>(tree.t1.size()) < need_t1)
        return Infeasible{std::move(tree), "fewer than ceil(slack*d1) selectable level-1 vertices"};
    return tree;
}

} // namespace subturan
