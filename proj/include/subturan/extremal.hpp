#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subturan/canonical.hpp"
#include "subturan/families.hpp"
#include "subturan/finder.hpp"
#include "subturan/graph.hpp"

namespace subturan {

struct ExtremalRecord {
    int n = 0;
    int m = -1; // bipartite part size, -1 for the one-sided problem
    std::string pattern_canonical;
    int value = 0;
    Graph witness;
    std::string method;
    long long runtime_ms = 0;
    unsigned long long nodes = 0;
};

namespace detail {

inline bool contains_pattern_using(const Graph& host, const Graph& pattern, int anchor) {
    SearchOptions so;
    so.budget = UINT64_MAX;
    so.anchor = anchor;
    return std::holds_alternative<Embedding>(find_subgraph(host, pattern, so));
}

} // namespace detail

// Exact ex(n, H) by canonical-dedup augmentation: grow one vertex at a time,
// keep only H-free children (checked through embeddings that use the new
// vertex), dedup each level by canonical form, and bound by the edges still
// addable. The final maximum is exact; pruned branches cannot beat it.
inline ExtremalRecord exact_ex(int n, const Graph& pattern, int cap = 10) {
    if (n < 1) throw std::invalid_argument("exact_ex: n >= 1");
    if (n > cap) throw resource_error("exact_ex: n above cap " + std::to_string(cap));
    if (pattern.edge_count() == 0)
        throw std::invalid_argument("exact_ex: pattern needs at least one edge");
    // a pattern larger than n never fits: the search then just returns K_n

    auto t0 = std::chrono::steady_clock::now();
    ExtremalRecord rec;
    rec.n = n;
    rec.pattern_canonical = canonical_form(pattern);
    rec.method = "orderly";
    rec.value = -1;

    std::vector<std::unordered_set<std::string>> seen(n + 1);
    std::string best_witness_form;

    auto rec_fn = [&](auto&& self, const Graph& g) -> void {
        ++rec.nodes;
        const int k = g.vertex_count();
        if (k == n) {
            if (g.edge_count() > rec.value ||
                (g.edge_count() == rec.value && canonical_form(g) < best_witness_form)) {
                rec.value = g.edge_count();
                rec.witness = g;
                best_witness_form = canonical_form(g);
            }
            return;
        }
        // edges addable if every later vertex were joined to everything
        int potential = g.edge_count() + (n * (n - 1) / 2 - k * (k - 1) / 2);
        if (potential <= rec.value) return;
        // extend by one vertex with every possible neighborhood
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Graph child(k + 1);
            for (auto [u, v] : g.edges()) child.add_edge(u, v);
            for (int v = 0; v < k; ++v)
                if ((mask >> v) & 1) child.add_edge(v, k);
            if (detail::contains_pattern_using(child, pattern, k)) continue;
            std::string form = canonical_form(child);
            if (!seen[k + 1].insert(form).second) continue;
            self(self, child);
        }
    };
    rec_fn(rec_fn, Graph(1));

    rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rec;
}

// Exact z(m, n, H) over bipartite graphs with labeled parts of sizes m and
// n. Rows (A-side neighborhoods) are chosen in nonincreasing (popcount,
// value) order, which prunes A-permutations; candidates run dense-first so
// the bound e + rows_left * popcount(last) bites early.
inline ExtremalRecord exact_z(int m, int n, const Graph& pattern, int cap = 14) {
    if (m < 1 || n < 1) throw std::invalid_argument("exact_z: m,n >= 1");
    if (m > n) throw std::invalid_argument("exact_z: require m <= n");
    if (m + n > cap) throw resource_error("exact_z: m+n above cap " + std::to_string(cap));
    if (pattern.edge_count() == 0)
        throw std::invalid_argument("exact_z: pattern needs at least one edge");

    auto t0 = std::chrono::steady_clock::now();
    ExtremalRecord rec;
    rec.n = n;
    rec.m = m;
    rec.pattern_canonical = canonical_form(pattern);
    rec.method = "row-dfs";
    rec.value = -1;

    // all candidate rows sorted dense-first
    std::vector<std::uint32_t> all_rows;
    for (std::uint32_t r = 0; r < (std::uint32_t{1} << n); ++r) all_rows.push_back(r);
    std::sort(all_rows.begin(), all_rows.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa > pb;
        return a > b;
    });
    auto row_leq = [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a <= b;
    };

    std::vector<std::uint32_t> rows;
    auto build = [&](int upto) {
        Graph g(m + n);
        for (int i = 0; i < upto; ++i)
            for (int j = 0; j < n; ++j)
                if ((rows[i] >> j) & 1) g.add_edge(i, m + j);
        return g;
    };

    auto dfs = [&](auto&& self, int i, int edges) -> void {
        ++rec.nodes;
        if (i == m) {
            if (edges > rec.value) {
                rec.value = edges;
                rec.witness = build(m);
            }
            return;
        }
        for (std::uint32_t r : all_rows) {
            if (i > 0 && !row_leq(r, rows[i - 1])) continue;
            int pc = __builtin_popcount(r);
            if (edges + pc * (m - i) <= rec.value) break; // rows only get sparser
            rows.push_back(r);
            bool bad = false;
            if (pc > 0) {
                Graph g = build(i + 1);
                bad = detail::contains_pattern_using(g, pattern, i);
            }
            if (!bad) self(self, i + 1, edges + pc);
            rows.pop_back();
        }
    };
    dfs(dfs, 0, 0);

    rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rec;
}

// Lemma 3.1 evaluation: z(m,n,C_2k) <= (2k-3)[(mn)^{(k+1)/2k} + m + n] for
// odd k and (2k-3)[m^{(k+2)/2k} n^{1/2} + m + n] for even k.
struct BoundCheck {
    double bound = 0;
    bool holds = false;
    double slack = 0;
};

inline BoundCheck check_naor_verstraete_bound(int m, int n, int k, double computed_z) {
    if (m > n) throw std::invalid_argument("check_naor_verstraete_bound: m <= n");
    if (k < 2) throw std::invalid_argument("check_naor_verstraete_bound: k >= 2");
    double main_term;
    if (k % 2 == 1)
        main_term = std::pow(static_cast<double>(m) * n, (k + 1.0) / (2.0 * k));
    else
        main_term = std::pow(static_cast<double>(m), (k + 2.0) / (2.0 * k)) * std::sqrt(static_cast<double>(n));
    BoundCheck out;
    out.bound = (2.0 * k - 3.0) * (main_term + m + n);
    out.holds = computed_z <= out.bound;
    out.slack = out.bound - computed_z;
    return out;
}

// ---- the symplectic generalized quadrangle W(q) -----------------------------

struct GQConstruction {
    int q = 0;
    int points = 0, lines = 0;
    Graph incidence; // points 0..points-1, lines points..points+lines-1
};

namespace detail {

// arithmetic for GF(q), q in {2,3,4}; GF(4) = F2[w]/(w^2+w+1)
struct SmallField {
    int q;
    explicit SmallField(int q_) : q(q_) {
        if (q != 2 && q != 3 && q != 4)
            throw std::invalid_argument("gq_incidence_graph: q must be 2, 3 or 4");
    }
    int add(int a, int b) const {
        if (q == 4) return a ^ b;
        return (a + b) % q;
    }
    int neg(int a) const {
        if (q == 4) return a;
        return (q - a) % q;
    }
    int mul(int a, int b) const {
        if (q != 4) return (a * b) % q;
        if (a == 0 || b == 0) return 0;
        // exponents w.r.t. generator w: 1=w^0, 2=w^1, 3=w^2
        static constexpr int log_[5] = {-1, 0, 1, 2, -1};
        static constexpr int exp_[3] = {1, 2, 3};
        return exp_[(log_[a] + log_[b]) % 3];
    }
};

using Vec4 = std::array<int, 4>;

inline int symplectic_form(const SmallField& f, const Vec4& x, const Vec4& y) {
    // x1 y2 - x2 y1 + x3 y4 - x4 y3
    int s = f.add(f.mul(x[0], y[1]), f.neg(f.mul(x[1], y[0])));
    s = f.add(s, f.mul(x[2], y[3]));
    s = f.add(s, f.neg(f.mul(x[3], y[2])));
    return s;
}

} // namespace detail

// Point-line incidence graph of W(q): points are the projective points of
// F_q^4, lines the 2-dim totally isotropic subspaces of the standard
// alternating form. Validated before returning: (q+1)-regular, equal part
// sizes q^3+q^2+q+1, girth 8.
inline GQConstruction gq_incidence_graph(int q) {
    detail::SmallField f(q);
    using detail::Vec4;

    // projective normalization: first nonzero coordinate is 1
    std::vector<Vec4> points;
    std::map<Vec4, int> point_id;
    auto normalize_ok = [&](const Vec4& v) {
        for (int c : v) {
            if (c == 0) continue;
            return c == 1;
        }
        return false;
    };
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    Vec4 v{a, b, c, d};
                    if (normalize_ok(v)) {
                        point_id[v] = static_cast<int>(points.size());
                        points.push_back(v);
                    }
                }

    auto scale = [&](const Vec4& v, int s) {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = f.mul(v[i], s);
        return r;
    };
    auto add = [&](const Vec4& a, const Vec4& b) {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = f.add(a[i], b[i]);
        return r;
    };

    // 2-dim totally isotropic subspaces as sorted point-id sets
    std::set<std::vector<int>> lines;
    const int np = static_cast<int>(points.size());
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) {
            if (detail::symplectic_form(f, points[i], points[j]) != 0) continue;
            std::set<int> members;
            for (int s1 = 0; s1 < q; ++s1)
                for (int s2 = 0; s2 < q; ++s2) {
                    if (s1 == 0 && s2 == 0) continue;
                    Vec4 v = add(scale(points[i], s1), scale(points[j], s2));
                    // normalize to the projective representative
                    int lead = 0;
                    for (int c : v)
                        if (c != 0) { lead = c; break; }
                    if (lead == 0) continue;
                    // divide by lead: find inverse via brute force
                    int inv = 0;
                    for (int e = 1; e < q; ++e)
                        if (f.mul(lead, e) == 1) { inv = e; break; }
                    members.insert(point_id.at(scale(v, inv)));
                }
            lines.insert(std::vector<int>(members.begin(), members.end()));
        }

    GQConstruction out;
    out.q = q;
    out.points = np;
    out.lines = static_cast<int>(lines.size());
    Graph g(out.points + out.lines);
    int lid = out.points;
    for (const auto& line : lines) {
        for (int p : line) g.add_edge(p, lid);
        ++lid;
    }
    out.incidence = std::move(g);

    const int expect = q * q * q + q * q + q + 1;
    if (out.points != expect || out.lines != expect)
        throw std::logic_error("gq_incidence_graph: wrong part sizes");
    for (int v = 0; v < out.incidence.vertex_count(); ++v)
        if (out.incidence.degree(v) != q + 1)
            throw std::logic_error("gq_incidence_graph: not (q+1)-regular");
    if (girth(out.incidence) != 8)
        throw std::logic_error("gq_incidence_graph: girth is not 8");
    return out;
}

// ---- density table ----------------------------------------------------------

struct DensityRow {
    int n = 0;
    int e = 0;
    double ratio = 0;
};

inline std::vector<DensityRow> density_table(const std::vector<Graph>& graphs,
                                             double exponent = 4.0 / 3.0) {
    std::vector<DensityRow> rows;
    for (const Graph& g : graphs) {
        DensityRow r;
        r.n = g.vertex_count();
        r.e = g.edge_count();
        r.ratio = r.n > 0 ? r.e / std::pow(static_cast<double>(r.n), exponent) : 0;
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end(), [](const DensityRow& a, const DensityRow& b) {
        return a.n < b.n;
    });
    return rows;
}

} // namespace subturan
