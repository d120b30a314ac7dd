#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <functional>

#include "subturan/extremal.hpp"
#include "subturan/families.hpp"
#include "subturan/finder.hpp"
#include "subturan/graph.hpp"

#include "oracles.hpp"

using namespace subturan;

namespace {

// mask-walk maximum over all n-vertex graphs; prunes by popcount
int naive_max_edges(int n, const std::function<bool(const Graph&)>& has_pattern) {
    int m = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pos.emplace_back(i, j);
    int best = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        if (__builtin_popcount(mask) <= best) continue;
        Graph g(n);
        for (int b = 0; b < m; ++b)
            if ((mask >> b) & 1) g.add_edge(pos[b].first, pos[b].second);
        if (!has_pattern(g)) best = __builtin_popcount(mask);
    }
    return best;
}

int naive_max_bipartite(int m, int n, int cycle_len) {
    int bits = m * n;
    int best = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << bits); ++mask) {
        if (__builtin_popcount(mask) <= best) continue;
        Graph g(m + n);
        for (int b = 0; b < bits; ++b)
            if ((mask >> b) & 1) g.add_edge(b / n, m + b % n);
        if (!oracles::contains_cycle_of_length(g, cycle_len)) best = __builtin_popcount(mask);
    }
    return best;
}

} // namespace

TEST_CASE("exact_ex matches known small values") {
    auto rec = exact_ex(4, cycle_graph(3));
    REQUIRE(rec.value == 4); // C4 is the extremal graph
    REQUIRE(are_isomorphic(rec.witness, cycle_graph(4)));

    // no K2-free graph has an edge
    for (int n : {2, 4, 6}) REQUIRE(exact_ex(n, Graph::from_edges(2, {{0, 1}})).value == 0);

    // Turan numbers for K3: floor(n^2/4)
    for (int n = 3; n <= 7; ++n) REQUIRE(exact_ex(n, cycle_graph(3)).value == n * n / 4);
}

TEST_CASE("exact_ex agrees with naive enumeration up to n = 6") {
    for (int n = 3; n <= 6; ++n) {
        for (int len : {3, 4, 5, 6}) {
            int want = naive_max_edges(
                n, [&](const Graph& g) { return oracles::contains_cycle_of_length(g, len); });
            REQUIRE(exact_ex(n, cycle_graph(len)).value == want);
        }
    }
}

TEST_CASE("exact_ex(8, C6) regression with validated witness") {
    auto rec = exact_ex(8, cycle_graph(6));
    REQUIRE(rec.value == 16);
    REQUIRE(rec.witness.edge_count() == 16);
    SearchOptions so;
    so.budget = UINT64_MAX;
    REQUIRE(std::holds_alternative<NotFound>(find_subgraph(rec.witness, cycle_graph(6), so)));
}

TEST_CASE("exact_ex is monotone in n") {
    int prev = -1;
    for (int n = 3; n <= 7; ++n) {
        int v = exact_ex(n, cycle_graph(4)).value;
        REQUIRE(v >= prev);
        prev = v;
    }
}

TEST_CASE("exact_ex rejects out-of-cap and edgeless patterns") {
    REQUIRE_THROWS_AS(exact_ex(11, cycle_graph(3)), resource_error);
    REQUIRE_THROWS_AS(exact_ex(4, Graph(3)), std::invalid_argument);
}

TEST_CASE("exact_z spec values") {
    REQUIRE(exact_z(2, 2, cycle_graph(6)).value == 4);
    REQUIRE(exact_z(3, 3, cycle_graph(6)).value == 7);
    REQUIRE(exact_z(3, 3, cycle_graph(6)).value == naive_max_bipartite(3, 3, 6));
}

TEST_CASE("exact_z agrees with the naive oracle for C4, m,n <= 4") {
    for (int m = 1; m <= 4; ++m)
        for (int n = m; n <= 4; ++n)
            REQUIRE(exact_z(m, n, cycle_graph(4)).value == naive_max_bipartite(m, n, 4));
}

TEST_CASE("exact_z witnesses are pattern-free with the stated edges") {
    for (int k : {2, 3}) {
        auto rec = exact_z(4, 5, cycle_graph(2 * k));
        REQUIRE(rec.witness.edge_count() == rec.value);
        SearchOptions so;
        so.budget = UINT64_MAX;
        REQUIRE(std::holds_alternative<NotFound>(find_subgraph(rec.witness, cycle_graph(2 * k), so)));
    }
}

TEST_CASE("z is bounded by mn with equality iff the complete host is free") {
    for (int m = 2; m <= 3; ++m)
        for (int n = m; n <= 4; ++n)
            for (int k : {2, 3}) {
                auto rec = exact_z(m, n, cycle_graph(2 * k));
                REQUIRE(rec.value <= m * n);
                bool complete_free = !oracles::contains_cycle_of_length(complete_bipartite(m, n), 2 * k);
                REQUIRE((rec.value == m * n) == complete_free);
            }
}

TEST_CASE("Naor-Verstraete bound formula values") {
    // odd k = 3: (2k-3)[(mn)^{(k+1)/2k} + m + n] = 3*(9^{2/3} + 6)
    auto b1 = check_naor_verstraete_bound(3, 3, 3, 7);
    REQUIRE(b1.bound == Catch::Approx(3 * (std::pow(9.0, 2.0 / 3.0) + 6)).epsilon(1e-12));
    REQUIRE(b1.bound == Catch::Approx(30.98).margin(0.01));
    REQUIRE(b1.holds);
    REQUIRE(b1.slack == Catch::Approx(b1.bound - 7));

    auto b2 = check_naor_verstraete_bound(2, 2, 3, 4);
    REQUIRE(b2.bound == Catch::Approx(19.56).margin(0.01));
    REQUIRE(b2.holds);

    // even k = 2: (2k-3)[m^{(k+2)/2k} n^{1/2} + m + n] = 3*sqrt(4) + 7
    auto b3 = check_naor_verstraete_bound(3, 4, 2, 0);
    REQUIRE(b3.bound == Catch::Approx(13.0).epsilon(1e-12));
}

TEST_CASE("Lemma 3.1 holds on the full computed matrix") {
    for (int k : {2, 3})
        for (int n = 2; n <= 7; ++n)
            for (int m = 2; m <= n; ++m) {
                auto rec = exact_z(m, n, cycle_graph(2 * k));
                auto chk = check_naor_verstraete_bound(m, n, k, rec.value);
                INFO("m=" << m << " n=" << n << " k=" << k << " z=" << rec.value);
                REQUIRE(chk.holds);
            }
}

TEST_CASE("gq_incidence_graph(2): the 30-vertex girth-8 cage-like host") {
    auto gq = gq_incidence_graph(2);
    REQUIRE(gq.points == 15);
    REQUIRE(gq.lines == 15);
    REQUIRE(gq.incidence.vertex_count() == 30);
    REQUIRE(gq.incidence.edge_count() == 45);
    for (int v = 0; v < 30; ++v) REQUIRE(gq.incidence.degree(v) == 3);
    REQUIRE(girth(gq.incidence) == 8);
    REQUIRE(std::holds_alternative<NotFound>(find_subgraph(gq.incidence, cycle_graph(6))));
}

TEST_CASE("gq_incidence_graph(3) and (4) validate") {
    auto gq3 = gq_incidence_graph(3);
    REQUIRE(gq3.incidence.vertex_count() == 80);
    REQUIRE(gq3.incidence.edge_count() == 160);
    REQUIRE(girth(gq3.incidence) == 8);

    auto gq4 = gq_incidence_graph(4);
    REQUIRE(gq4.points == 85);
    REQUIRE(gq4.incidence.edge_count() == 85 * 5);
    REQUIRE(girth(gq4.incidence) == 8);

    REQUIRE_THROWS_AS(gq_incidence_graph(5), std::invalid_argument);
}

TEST_CASE("density_table rows") {
    auto gq2 = gq_incidence_graph(2);
    auto rows = density_table({gq2.incidence});
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].n == 30);
    REQUIRE(rows[0].e == 45);
    REQUIRE(rows[0].ratio == Catch::Approx(45.0 / std::pow(30.0, 4.0 / 3.0)));

    REQUIRE(density_table({}).empty());

    auto gq3 = gq_incidence_graph(3);
    auto two = density_table({gq3.incidence, gq2.incidence});
    REQUIRE(two.size() == 2);
    REQUIRE(two[0].n == 30); // sorted by n
    REQUIRE(two[1].n == 80);
}
