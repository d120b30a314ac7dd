#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "subturan/colored.hpp"
#include "subturan/families.hpp"
#include "subturan/graph.hpp"

#include "oracles.hpp"

using namespace subturan;

namespace {

BipartiteGraph bipartite_fixed(const Graph& g, int a_size) {
    Bitset a(g.vertex_count()), b(g.vertex_count());
    for (int v = 0; v < a_size; ++v) a.set(v);
    for (int v = a_size; v < g.vertex_count(); ++v) b.set(v);
    return BipartiteGraph(g, a, b);
}

// independent oracle: try every injective assignment of pattern edges to B
bool proper_by_exhaustion(const Graph& host, const Graph& pattern,
                          const std::vector<int>& copy, const std::vector<int>& b_side) {
    auto pes = pattern.edges();
    std::vector<char> used(host.vertex_count(), 0);
    auto rec = [&](auto&& self, std::size_t e) -> bool {
        if (e == pes.size()) return true;
        auto [u, v] = pes[e];
        for (int b : b_side) {
            if (used[b]) continue;
            if (!host.has_edge(copy[u], b) || !host.has_edge(b, copy[v])) continue;
            used[b] = 1;
            if (self(self, e + 1)) return true;
            used[b] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace

TEST_CASE("build_colored trichotomy on the C8 host") {
    // A = even positions of C8, threshold 2: distance-2 pairs are blue,
    // antipodal pairs uncolored, nothing red
    Graph c8 = cycle_graph(8);
    Bitset a(8), b(8);
    for (int v = 0; v < 8; ++v) (v % 2 == 0 ? a : b).set(v);
    ColoredPairGraph c(BipartiteGraph(c8, a, b), 2);
    REQUIRE(c.color(0, 2) == PairColor::Blue);
    REQUIRE(c.color(2, 4) == PairColor::Blue);
    REQUIRE(c.color(0, 4) == PairColor::Uncolored);
    REQUIRE(c.color(2, 6) == PairColor::Uncolored);

    auto st = blue_stats(c);
    REQUIRE(st.blue_edges == 4);
    for (int d : st.blue_degree) REQUIRE(d == 2);
}

TEST_CASE("build_colored red versus blue by common count") {
    // K_{2,5} against e(H)=6: the single A-pair has 5 common neighbors -> blue
    ColoredPairGraph blue(bipartite_fixed(complete_bipartite(2, 5), 2), 6);
    REQUIRE(blue.color(0, 1) == PairColor::Blue);
    REQUIRE(blue.common_count(0, 1) == 5);
    auto st = blue_stats(blue);
    REQUIRE(st.blue_edges == 1);

    // K_{2,8} against the same threshold: 8 >= 6 -> red
    ColoredPairGraph red(bipartite_fixed(complete_bipartite(2, 8), 2), 6);
    REQUIRE(red.color(0, 1) == PairColor::Red);
}

TEST_CASE("colors match a naive rescan on random hosts") {
    std::mt19937 rng(4321);
    for (int it = 0; it < 60; ++it) {
        int na = 3 + it % 8, nb = 3 + (it / 2) % 9;
        Graph g = oracles::random_bipartite(na, nb, 0.4, rng);
        int thr = 1 + it % 5;
        ColoredPairGraph c(bipartite_fixed(g, na), thr);
        for (int u = 0; u < na; ++u)
            for (int v = u + 1; v < na; ++v) {
                int count = 0;
                for (int b = na; b < na + nb; ++b)
                    if (g.has_edge(u, b) && g.has_edge(v, b)) ++count;
                REQUIRE(c.common_count(u, v) == count);
                PairColor want = count == 0 ? PairColor::Uncolored
                                : count >= thr ? PairColor::Red : PairColor::Blue;
                REQUIRE(c.color(u, v) == want);
            }
    }
}

TEST_CASE("is_proper single edge and Hall violation") {
    // one edge with a shared neighbor: proper
    Graph host = complete_bipartite(2, 1);
    ColoredPairGraph c(bipartite_fixed(host, 2), 2);
    Graph edge = Graph::from_edges(2, {{0, 1}});
    auto ok = is_proper(c, edge, {0, 1});
    REQUIRE(std::holds_alternative<ProperAssignment>(ok));
    REQUIRE(std::get<ProperAssignment>(ok).validate(edge, host));

    // path of two edges whose pairs share the same singleton neighborhood
    Graph h2(4); // A = {0,1,2}, B = {3}
    h2.add_edge(0, 3);
    h2.add_edge(1, 3);
    h2.add_edge(2, 3);
    ColoredPairGraph c2(bipartite_fixed(h2, 3), 3);
    Graph path2 = path_graph(3);
    auto bad = is_proper(c2, path2, {0, 1, 2});
    auto* imp = std::get_if<Improper>(&bad);
    REQUIRE(imp);
    REQUIRE(imp->edges.size() == 2);
    REQUIRE(imp->neighborhood == std::vector<int>{3});
}

TEST_CASE("is_proper triangle with exactly three distinct bridges") {
    // A = {0,1,2}; pairs (0,1)->3, (1,2)->4, (0,2)->5 only
    Graph h(6);
    h.add_edge(0, 3); h.add_edge(1, 3);
    h.add_edge(1, 4); h.add_edge(2, 4);
    h.add_edge(0, 5); h.add_edge(2, 5);
    ColoredPairGraph c(bipartite_fixed(h, 3), 3);
    auto res = is_proper(c, cycle_graph(3), {0, 1, 2});
    REQUIRE(std::holds_alternative<ProperAssignment>(res));
    REQUIRE(proper_by_exhaustion(h, cycle_graph(3), {0, 1, 2}, {3, 4, 5}));
}

TEST_CASE("is_proper precondition errors are distinct from Improper") {
    Graph host = complete_bipartite(3, 2);
    ColoredPairGraph c(bipartite_fixed(host, 3), 2);
    Graph edge = Graph::from_edges(2, {{0, 1}});
    REQUIRE_THROWS_AS(is_proper(c, edge, {0, 0}), std::invalid_argument);
    // uncolored pair: disconnect a vertex
    Graph h2(4);
    h2.add_edge(0, 3);
    ColoredPairGraph c2(bipartite_fixed(h2, 3), 2);
    REQUIRE_THROWS_AS(is_proper(c2, edge, {0, 1}), std::invalid_argument);
}

TEST_CASE("is_proper agrees with exhaustive assignment search") {
    std::mt19937 rng(20240601);
    int checked = 0;
    while (checked < 3000) {
        int hv = 2 + checked % 4;                      // pattern vertices <= 5
        Graph pattern = oracles::random_graph(hv, 0.6, rng);
        if (pattern.edge_count() < 1 || pattern.edge_count() > 6) continue;
        int na = hv + rng() % 3, nb = 1 + rng() % 6;   // |B| <= 6
        Graph host = oracles::random_bipartite(na, nb, 0.5, rng);
        std::vector<int> copy(hv);
        std::vector<int> perm = oracles::random_permutation(na, rng);
        for (int i = 0; i < hv; ++i) copy[i] = perm[i];
        ColoredPairGraph c(bipartite_fixed(host, na), pattern.edge_count() + 1);
        bool precondition_ok = true;
        for (auto [u, v] : pattern.edges())
            if (c.color(copy[u], copy[v]) == PairColor::Uncolored) precondition_ok = false;
        if (!precondition_ok) continue;
        std::vector<int> bside;
        for (int b = na; b < na + nb; ++b) bside.push_back(b);
        bool want = proper_by_exhaustion(host, pattern, copy, bside);
        bool got = std::holds_alternative<ProperAssignment>(is_proper(c, pattern, copy));
        REQUIRE(got == want);
        ++checked;
    }
}

TEST_CASE("blue_stats equals a quadratic rescan on random instances") {
    std::mt19937 rng(5150);
    for (int it = 0; it < 40; ++it) {
        int na = 4 + it % 7, nb = 4 + it % 5;
        Graph g = oracles::random_bipartite(na, nb, 0.45, rng);
        ColoredPairGraph c(bipartite_fixed(g, na), 2 + it % 3);
        auto st = blue_stats(c);
        long long blue = 0;
        for (int u = 0; u < na; ++u)
            for (int v = u + 1; v < na; ++v)
                if (c.is_blue(u, v)) ++blue;
        REQUIRE(st.blue_edges == blue);
    }
}

TEST_CASE("proper_star_partition basics") {
    // single b feeding few leaves -> one block when the window is large
    Graph g(6); // A = {0,1,2}, B = {3}; plus pad B vertices 4,5 unused
    g.add_edge(0, 3);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    ColoredPairGraph c(bipartite_fixed(g, 3), 5);
    auto blocks = proper_star_partition(c, 0, {1, 2}, 4);
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].size() == 2);
    REQUIRE_THROWS_AS(proper_star_partition(c, 0, {5}, 4), std::invalid_argument);
}

TEST_CASE("disjointly wired gadget produces one block per b") {
    // y = 0; b_i each privately wired to y and two leaves
    int leaves = 8;
    Graph g(1 + leaves + leaves / 2);
    int bbase = 1 + leaves;
    for (int i = 0; i < leaves / 2; ++i) {
        g.add_edge(0, bbase + i);
        g.add_edge(1 + 2 * i, bbase + i);
        g.add_edge(2 + 2 * i, bbase + i);
    }
    Bitset a(g.vertex_count()), b(g.vertex_count());
    for (int v = 0; v <= leaves; ++v) a.set(v);
    for (int v = bbase; v < g.vertex_count(); ++v) b.set(v);
    ColoredPairGraph c(BipartiteGraph(g, a, b), 9);
    std::vector<int> ys;
    for (int v = 1; v <= leaves; ++v) ys.push_back(v);
    auto blocks = proper_star_partition(c, 0, ys, 4); // window 4 -> close at >= 2
    REQUIRE(blocks.size() == leaves / 4 * 2);
    for (auto& blk : blocks) REQUIRE(blk.size() == 2);
}

TEST_CASE("cross-block transversal stars are proper on random gadgets") {
    std::mt19937 rng(31415);
    int tried = 0;
    for (int it = 0; it < 1000; ++it) {
        int na = 6 + it % 8, nb = 4 + it % 6;
        Graph g = oracles::random_bipartite(na, nb, 0.5, rng);
        ColoredPairGraph c(bipartite_fixed(g, na), 3 + it % 4);
        int y = it % na;
        auto ys = c.blue_neighborhood(y);
        if (ys.size() < 2) continue;
        auto blocks = proper_star_partition(c, y, ys, 2);
        if (blocks.size() < 2) continue;
        ++tried;
        for (int s : {2, 3}) {
            if (static_cast<int>(blocks.size()) < s) continue;
            // sample a transversal from the first s blocks
            std::vector<int> copy{y};
            for (int k = 0; k < s; ++k)
                copy.push_back(blocks[k][rng() % blocks[k].size()]);
            Graph star(1 + s);
            for (int i = 1; i <= s; ++i) star.add_edge(0, i);
            REQUIRE(std::holds_alternative<ProperAssignment>(is_proper(c, star, copy)));
        }
    }
    REQUIRE(tried > 100);
}

TEST_CASE("count_proper_blue_stars: s=1 counts the blue set") {
    Graph c8 = cycle_graph(8);
    Bitset a(8), b(8);
    for (int v = 0; v < 8; ++v) (v % 2 == 0 ? a : b).set(v);
    ColoredPairGraph c(BipartiteGraph(c8, a, b), 2);
    auto nb0 = c.blue_neighborhood(0);
    REQUIRE(count_proper_blue_stars(c, 0, nb0, 1, StarCountMode::Exact) == nb0.size());
}

TEST_CASE("count_proper_blue_stars on the C8 host, s=2") {
    Graph c8 = cycle_graph(8);
    Bitset a(8), b(8);
    for (int v = 0; v < 8; ++v) (v % 2 == 0 ? a : b).set(v);
    ColoredPairGraph c(BipartiteGraph(c8, a, b), 2);
    // N_b(0) = {2, 6}; the star over {2,6} uses bridges 1 and 7: proper
    REQUIRE(count_proper_blue_stars(c, 0, c.blue_neighborhood(0), 2, StarCountMode::Exact) == 1);
}

TEST_CASE("partition lower bound never exceeds the exact count") {
    std::mt19937 rng(2718);
    int effective = 0;
    for (int it = 0; it < 500; ++it) {
        int na = 5 + it % 6, nb = 3 + it % 5;
        Graph g = oracles::random_bipartite(na, nb, 0.5, rng);
        ColoredPairGraph c(bipartite_fixed(g, na), 2 + it % 4);
        int y = it % na;
        auto ys = c.blue_neighborhood(y);
        if (ys.empty()) continue;
        for (int s : {1, 2, 3}) {
            if (static_cast<int>(ys.size()) < s) continue;
            auto lb = count_proper_blue_stars(c, y, ys, s, StarCountMode::PartitionLowerBound);
            auto exact = count_proper_blue_stars(c, y, ys, s, StarCountMode::Exact);
            REQUIRE(lb <= exact);
            ++effective;
        }
    }
    REQUIRE(effective > 200);
}

TEST_CASE("enumerate_non_red_cliques against a subset-scan oracle") {
    std::mt19937 rng(1618);
    for (int it = 0; it < 50; ++it) {
        int na = 4 + it % 9, nb = 3 + it % 5; // |A'| <= 12
        Graph g = oracles::random_bipartite(na, nb, 0.5, rng);
        ColoredPairGraph c(bipartite_fixed(g, na), 1 + it % 3);
        std::vector<int> scope;
        for (int v = 0; v < na; ++v) scope.push_back(v);
        int s = 2 + it % 2;
        auto got = enumerate_non_red_cliques(c, scope, s);
        REQUIRE_FALSE(got.truncated);
        // oracle: scan all subsets
        long long want = 0;
        std::vector<int> pick;
        auto rec = [&](auto&& self, int from) -> void {
            if (static_cast<int>(pick.size()) == s) {
                for (std::size_t i = 0; i < pick.size(); ++i)
                    for (std::size_t j = i + 1; j < pick.size(); ++j)
                        if (c.is_red(pick[i], pick[j])) return;
                ++want;
                return;
            }
            for (int v = from; v < na; ++v) {
                pick.push_back(v);
                self(self, v + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        REQUIRE(static_cast<long long>(got.cliques.size()) == want);
    }
}

TEST_CASE("enumerate_non_red_cliques degenerate colorings") {
    // all pairs uncolored -> every subset qualifies
    Graph g(5); // A = {0,1,2,3}, B = {4}, no edges at all
    ColoredPairGraph c(bipartite_fixed(g, 4), 2);
    auto all = enumerate_non_red_cliques(c, {0, 1, 2, 3}, 2);
    REQUIRE(all.cliques.size() == 6);

    // all pairs red -> empty
    ColoredPairGraph red(bipartite_fixed(complete_bipartite(4, 3), 4), 2);
    auto none = enumerate_non_red_cliques(red, {0, 1, 2, 3}, 2);
    REQUIRE(none.cliques.empty());

    // cap produces the truncated flag
    auto capped = enumerate_non_red_cliques(c, {0, 1, 2, 3}, 2, 3);
    REQUIRE(capped.truncated);
    REQUIRE(capped.cliques.size() == 3);
}

namespace {

// host where each candidate z has fresh private common neighbors with every
// base vertex; capacity = number of candidates
struct ExtendGadget {
    Graph host;
    int a_count;
    std::vector<int> base;       // image of H = single edge
    std::vector<int> candidates;
};

ExtendGadget disjoint_gadget(int capacity) {
    // A: base y0,y1 then candidates; B: one bridge for the base edge plus a
    // private bridge for each (candidate, base vertex) pair
    int na = 2 + capacity;
    int nb = 1 + 2 * capacity;
    Graph g(na + nb);
    int bpos = na;
    ExtendGadget out;
    out.a_count = na;
    out.base = {0, 1};
    g.add_edge(0, bpos);
    g.add_edge(1, bpos);
    ++bpos;
    for (int zi = 0; zi < capacity; ++zi) {
        int z = 2 + zi;
        out.candidates.push_back(z);
        for (int v : {0, 1}) {
            g.add_edge(z, bpos);
            g.add_edge(v, bpos);
            ++bpos;
        }
    }
    out.host = std::move(g);
    return out;
}

} // namespace

TEST_CASE("greedy_extend: t=0 returns the base assignment") {
    // H = path on 3 vertices; both edge pairs have one common neighbor,
    // blue at threshold e(H) = 2
    Graph host(5); // A = {0,1,2}, B = {3,4}
    host.add_edge(0, 3);
    host.add_edge(1, 3);
    host.add_edge(1, 4);
    host.add_edge(2, 4);
    Graph h = path_graph(3);
    ColoredPairGraph c(bipartite_fixed(host, 3), h.edge_count());
    auto res = greedy_extend(c, h, {0, 1, 2}, 0);
    auto* ok = std::get_if<ProperAssignment>(&res);
    REQUIRE(ok);
    REQUIRE(ok->copy == std::vector<int>{0, 1, 2});
}

TEST_CASE("greedy_extend succeeds up to capacity on disjoint wiring") {
    Graph h = Graph::from_edges(2, {{0, 1}});
    for (int t = 1; t <= 4; ++t) {
        auto gad = disjoint_gadget(4);
        int threshold = h.edge_count() + t * h.vertex_count();
        ColoredPairGraph c(bipartite_fixed(gad.host, gad.a_count), threshold);
        auto res = greedy_extend(c, h, gad.base, t);
        auto* ok = std::get_if<ProperAssignment>(&res);
        REQUIRE(ok);
        Graph big = join_independent_set(h, t);
        REQUIRE(ok->validate(big, gad.host));
    }
}

TEST_CASE("greedy_extend gets stuck when all candidates share one b in B'") {
    // b* adjacent to the base pair and to every candidate
    int capacity = 3;
    int na = 2 + capacity;
    Graph g(na + 1 + capacity);
    int bstar = na;
    g.add_edge(0, bstar);
    g.add_edge(1, bstar);
    for (int zi = 0; zi < capacity; ++zi) {
        int z = 2 + zi;
        g.add_edge(z, bstar);             // pollutes every candidate
        g.add_edge(z, na + 1 + zi);       // private b shared with y0 only
        g.add_edge(0, na + 1 + zi);
    }
    Graph h = Graph::from_edges(2, {{0, 1}});
    int t = 1;
    ColoredPairGraph c(bipartite_fixed(g, na), h.edge_count() + t * h.vertex_count());
    auto res = greedy_extend(c, h, {0, 1}, t);
    auto* stuck = std::get_if<Stuck>(&res);
    REQUIRE(stuck);
    REQUIRE(stuck->placed == 0);
}

TEST_CASE("greedy_extend rejects bad preconditions") {
    auto gad = disjoint_gadget(2);
    Graph h = Graph::from_edges(2, {{0, 1}});
    // wrong threshold
    ColoredPairGraph c(bipartite_fixed(gad.host, gad.a_count), 99);
    REQUIRE_THROWS_AS(greedy_extend(c, h, gad.base, 1), std::invalid_argument);
}
