#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subturan/families.hpp"
#include "subturan/graph.hpp"

namespace subturan {

enum class PairColor { Uncolored, Blue, Red };

// The colored graph G_c(A): every unordered pair of A-vertices is classified
// by its number of common neighbors in B against a pattern edge-count
// threshold. Red means >= e(H), Blue means 1..e(H)-1, Uncolored means 0.
class ColoredPairGraph {
public:
    ColoredPairGraph(BipartiteGraph host, int pattern_edge_count)
        : host_(std::move(host)), threshold_(pattern_edge_count) {
        if (threshold_ < 1) throw std::invalid_argument("pattern edge count must be >= 1");
        a_ = host_.a_vertices();
        index_.assign(host_.graph().vertex_count(), -1);
        for (std::size_t i = 0; i < a_.size(); ++i) index_[a_[i]] = static_cast<int>(i);
        const int m = static_cast<int>(a_.size());
        counts_.assign(static_cast<std::size_t>(m) * (m - 1) / 2, 0);
        for (int i = 0; i < m; ++i) {
            const Bitset& ni = host_.graph().neighbors(a_[i]);
            for (int j = i + 1; j < m; ++j)
                counts_[tri(i, j)] = ni.intersection_count(host_.graph().neighbors(a_[j]));
        }
    }

    const BipartiteGraph& host() const { return host_; }
    int threshold() const { return threshold_; }
    const std::vector<int>& a_vertices() const { return a_; }

    int a_index(int host_vertex) const {
        host_.graph().check_vertex(host_vertex);
        int i = index_[host_vertex];
        if (i < 0) throw std::invalid_argument("vertex " + std::to_string(host_vertex) + " is not in part A");
        return i;
    }

    int common_count(int u, int v) const {
        int i = a_index(u), j = a_index(v);
        if (i == j) throw std::invalid_argument("pair needs two distinct A-vertices");
        return counts_[tri(std::min(i, j), std::max(i, j))];
    }

    PairColor color(int u, int v) const {
        int c = common_count(u, v);
        if (c == 0) return PairColor::Uncolored;
        return c >= threshold_ ? PairColor::Red : PairColor::Blue;
    }

    bool is_blue(int u, int v) const { return color(u, v) == PairColor::Blue; }
    bool is_red(int u, int v) const { return color(u, v) == PairColor::Red; }

    // blue neighborhood of y inside A, as host vertex ids
    std::vector<int> blue_neighborhood(int y) const {
        std::vector<int> out;
        for (int u : a_) if (u != y && is_blue(y, u)) out.push_back(u);
        return out;
    }

    // common blue neighborhood of a set of A-vertices
    std::vector<int> common_blue_neighborhood(const std::vector<int>& vs) const {
        std::vector<int> out;
        for (int u : a_) {
            bool all = true;
            for (int v : vs) {
                if (u == v || !is_blue(u, v)) { all = false; break; }
            }
            if (all) out.push_back(u);
        }
        return out;
    }

private:
    static std::size_t tri_base(int i, int m) {
        return static_cast<std::size_t>(i) * (2 * m - i - 1) / 2;
    }
    std::size_t tri(int i, int j) const {
        return tri_base(i, static_cast<int>(a_.size())) + (j - i - 1);
    }

    BipartiteGraph host_;
    int threshold_;
    std::vector<int> a_;
    std::vector<int> index_;
    std::vector<int> counts_;
};

inline ColoredPairGraph build_colored(BipartiteGraph host, const Graph& pattern) {
    return ColoredPairGraph(std::move(host), pattern.edge_count());
}

// ---- proper copies ------------------------------------------------------

// Certified embedding of H^sub: a colored copy of H in A together with
// pairwise distinct bridge vertices in B, one per pattern edge.
struct ProperAssignment {
    std::vector<int> copy;                       // pattern vertex -> A host id
    std::map<std::pair<int, int>, int> bridges;  // pattern edge (u<v) -> B host id

    bool validate(const Graph& pattern, const Graph& host) const {
        if (static_cast<int>(copy.size()) != pattern.vertex_count()) return false;
        std::vector<char> used_host(host.vertex_count(), 0);
        for (int h : copy) {
            if (h < 0 || h >= host.vertex_count() || used_host[h]) return false;
            used_host[h] = 1;
        }
        std::vector<char> used_bridge(host.vertex_count(), 0);
        auto es = pattern.edges();
        if (bridges.size() != es.size()) return false;
        for (auto [u, v] : es) {
            auto it = bridges.find({u, v});
            if (it == bridges.end()) return false;
            int b = it->second;
            if (b < 0 || b >= host.vertex_count() || used_bridge[b]) return false;
            used_bridge[b] = 1;
            if (!host.has_edge(copy[u], b) || !host.has_edge(b, copy[v])) return false;
        }
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["copy"] = nlohmann::json::object();
        for (std::size_t v = 0; v < copy.size(); ++v) j["copy"][std::to_string(v)] = copy[v];
        j["bridges"] = nlohmann::json::object();
        for (const auto& [e, b] : bridges)
            j["bridges"]["[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]"] = b;
        return j;
    }
};

struct Improper {
    // Hall-violating witness: these pattern edges have fewer candidate
    // bridges than edges
    std::vector<std::pair<int, int>> edges;
    std::vector<int> neighborhood; // their combined candidate B vertices
};

using ProperResult = std::variant<ProperAssignment, Improper>;

// Decide whether a colored copy admits pairwise distinct common-neighbor
// representatives: a maximum matching between pattern edges and B. Edges are
// processed in ascending candidate-count order; candidates in ascending id.
inline ProperResult is_proper(const ColoredPairGraph& c, const Graph& pattern,
                              const std::vector<int>& copy) {
    const Graph& host = c.host().graph();
    if (static_cast<int>(copy.size()) != pattern.vertex_count())
        throw std::invalid_argument("is_proper: copy size mismatch");
    std::vector<char> seen(host.vertex_count(), 0);
    for (int h : copy) {
        c.a_index(h); // validates membership in A
        if (seen[h]) throw std::invalid_argument("is_proper: copy not injective");
        seen[h] = 1;
    }
    auto pes = pattern.edges();
    std::vector<Bitset> cand;
    cand.reserve(pes.size());
    for (auto [u, v] : pes) {
        if (c.color(copy[u], copy[v]) == PairColor::Uncolored)
            throw std::invalid_argument("is_proper: pattern edge maps to an uncolored pair");
        cand.push_back(common_neighborhood(host, {copy[u], copy[v]}));
    }

    const int m = static_cast<int>(pes.size());
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cand[a].count() < cand[b].count(); });

    std::vector<int> match_b(host.vertex_count(), -1); // B vertex -> edge index
    std::vector<int> match_e(m, -1);                   // edge index -> B vertex
    std::vector<char> visited(host.vertex_count(), 0);
    auto augment = [&](auto&& self, int e) -> bool {
        for (int b = cand[e].find_first(); b >= 0; b = cand[e].find_next(b)) {
            if (visited[b]) continue;
            visited[b] = 1;
            if (match_b[b] < 0 || self(self, match_b[b])) {
                match_b[b] = e;
                match_e[e] = b;
                return true;
            }
        }
        return false;
    };

    for (int e : order) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, e)) {
            // Koenig witness: the failed edge plus every edge matched into
            // the visited set; its candidate union is the visited set itself
            Improper w;
            w.edges.push_back(pes[e]);
            for (int b = 0; b < host.vertex_count(); ++b)
                if (visited[b]) {
                    w.neighborhood.push_back(b);
                    if (match_b[b] >= 0) w.edges.push_back(pes[match_b[b]]);
                }
            return w;
        }
    }

    ProperAssignment out;
    out.copy = copy;
    for (int i = 0; i < m; ++i) out.bridges[pes[i]] = match_e[i];
    return out;
}

// ---- counting ------------------------------------------------------------

struct BlueStats {
    long long blue_edges = 0;
    int max_blue_vertex = -1;             // host id attaining the max
    std::vector<int> blue_degree;         // aligned with a_vertices()
    double hypothesis_ratio = 0;          // delta*|A|/|B| from Lemma 2.4
};

inline BlueStats blue_stats(const ColoredPairGraph& c) {
    BlueStats st;
    const auto& a = c.a_vertices();
    st.blue_degree.assign(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (c.is_blue(a[i], a[j])) {
                ++st.blue_edges;
                ++st.blue_degree[i];
                ++st.blue_degree[j];
            }
    int best = -1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (best < 0 || st.blue_degree[i] > st.blue_degree[best]) best = static_cast<int>(i);
    st.max_blue_vertex = best >= 0 ? a[best] : -1;
    int delta = -1;
    for (int v : a) delta = delta < 0 ? c.host().graph().degree(v)
                                      : std::min(delta, c.host().graph().degree(v));
    if (delta > 0 && c.host().size_b() > 0)
        st.hypothesis_ratio = static_cast<double>(delta) * c.host().size_a() / c.host().size_b();
    return st;
}

// Lemma 2.6 block partition of Y subset of N_b(y). Order N_G(y), intersect
// each b's neighborhood with Y, left-subtract to a partition, then group
// consecutive parts into blocks of roughly `window` vertices. Any transversal
// of distinct blocks is a proper star centered at y: each vertex keeps a
// private witness b, distinct across parts by construction.
inline std::vector<std::vector<int>>
proper_star_partition(const ColoredPairGraph& c, int y, const std::vector<int>& ys,
                      int window = 0) {
    const Graph& host = c.host().graph();
    c.a_index(y);
    for (int u : ys)
        if (!c.is_blue(y, u))
            throw std::invalid_argument("proper_star_partition: Y must lie in the blue neighborhood of y");
    if (window <= 0) {
        // default: the minimum positive B-degree of the host
        int mindeg = -1;
        for (int b : c.host().b_vertices()) {
            int d = host.degree(b);
            if (d > 0) mindeg = mindeg < 0 ? d : std::min(mindeg, d);
        }
        window = std::max(1, mindeg);
    }

    Bitset yset(host.vertex_count());
    for (int u : ys) yset.set(u);

    std::vector<std::vector<int>> parts; // left-subtracted W_i, nonempty
    Bitset used(host.vertex_count());
    const Bitset& nby = host.neighbors(y);
    for (int b = nby.find_first(); b >= 0; b = nby.find_next(b)) {
        Bitset w = host.neighbors(b);
        w &= yset;
        w.subtract(used);
        if (w.none()) continue;
        used |= w;
        parts.push_back(w.to_vector());
    }

    std::vector<std::vector<int>> blocks;
    std::vector<int> cur;
    for (auto& part : parts) {
        cur.insert(cur.end(), part.begin(), part.end());
        if (2 * static_cast<int>(cur.size()) >= window) {
            blocks.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) {
        if (!blocks.empty() && 2 * static_cast<int>(cur.size()) <= window)
            blocks.back().insert(blocks.back().end(), cur.begin(), cur.end());
        else
            blocks.push_back(std::move(cur));
    }
    return blocks;
}

enum class StarCountMode { Exact, PartitionLowerBound };

inline unsigned long long count_proper_blue_stars(const ColoredPairGraph& c, int y,
                                                  const std::vector<int>& ys, int s,
                                                  StarCountMode mode, int exact_cap = 20) {
    if (s < 1) throw std::invalid_argument("count_proper_blue_stars: s >= 1");
    std::vector<int> blue;
    for (int u : ys)
        if (u != y && c.is_blue(y, u)) blue.push_back(u);

    if (mode == StarCountMode::PartitionLowerBound) {
        auto blocks = proper_star_partition(c, y, blue);
        // elementary symmetric polynomial e_s of the block sizes
        std::vector<unsigned long long> e(s + 1, 0);
        e[0] = 1;
        for (const auto& blk : blocks) {
            unsigned long long size = blk.size();
            for (int k = s; k >= 1; --k) e[k] += e[k - 1] * size;
        }
        return e[s];
    }

    if (static_cast<int>(blue.size()) > exact_cap)
        throw resource_error("count_proper_blue_stars: exact mode above |Y| cap");
    // star pattern: center 0, leaves 1..s
    Graph star(1 + s);
    for (int i = 1; i <= s; ++i) star.add_edge(0, i);
    unsigned long long count = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == s) {
            std::vector<int> copy{y};
            copy.insert(copy.end(), pick.begin(), pick.end());
            if (std::holds_alternative<ProperAssignment>(is_proper(c, star, copy))) ++count;
            return;
        }
        for (std::size_t i = from; i < blue.size(); ++i) {
            pick.push_back(blue[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

struct CliqueList {
    std::vector<std::vector<int>> cliques; // host ids, ascending inside each
    bool truncated = false;
};

// All s-subsets of scope whose pairs are all Blue or Uncolored.
inline CliqueList enumerate_non_red_cliques(const ColoredPairGraph& c,
                                            const std::vector<int>& scope, int s,
                                            long long cap = 1'000'000) {
    if (s < 2) throw std::invalid_argument("enumerate_non_red_cliques: s >= 2");
    std::vector<int> verts(scope);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int m = static_cast<int>(verts.size());
    std::vector<Bitset> nonred(m, Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!c.is_red(verts[i], verts[j])) {
                nonred[i].set(j);
                nonred[j].set(i);
            }
    CliqueList out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from, Bitset cand) -> bool {
        if (static_cast<int>(pick.size()) == s) {
            if (static_cast<long long>(out.cliques.size()) >= cap) {
                out.truncated = true;
                return false;
            }
            std::vector<int> cl;
            for (int i : pick) cl.push_back(verts[i]);
            out.cliques.push_back(std::move(cl));
            return true;
        }
        for (int i = cand.find_next(from - 1); i >= 0; i = cand.find_next(i)) {
            pick.push_back(i);
            Bitset next = cand;
            next &= nonred[i];
            if (!self(self, i + 1, std::move(next))) return false;
            pick.pop_back();
        }
        return true;
    };
    Bitset all(m);
    for (int i = 0; i < m; ++i) all.set(i);
    rec(rec, 0, all);
    return out;
}

// ---- greedy extension (Prop 2.5) ------------------------------------------

struct Stuck {
    int placed = 0;
    std::vector<int> partial; // the z's that were placed before blocking
};

using ExtendResult = std::variant<ProperAssignment, Stuck>;

// K_{H,t}: H plus an independent set of t vertices joined to all of V(H).
inline Graph join_independent_set(const Graph& h, int t) {
    Graph g(h.vertex_count() + t);
    for (auto [u, v] : h.edges()) g.add_edge(u, v);
    for (int i = 0; i < t; ++i)
        for (int v = 0; v < h.vertex_count(); ++v) g.add_edge(h.vertex_count() + i, v);
    return g;
}

// Extend a proper blue copy of H by t vertices from its common blue
// neighborhood, per the Prop 2.5 greedy: a candidate is usable when its
// G-neighborhood avoids every common neighborhood of pairs already embedded.
// The coloring must already be the K_{H,t} coloring.
inline ExtendResult greedy_extend(const ColoredPairGraph& c, const Graph& h,
                                  const std::vector<int>& copy, int t) {
    const Graph& host = c.host().graph();
    const int expected_threshold = h.edge_count() + t * h.vertex_count();
    if (c.threshold() != expected_threshold)
        throw std::invalid_argument("greedy_extend: coloring threshold must equal e(K_{H,t})");

    // preconditions: blue proper copy, all internal pairs non-red
    for (std::size_t i = 0; i < copy.size(); ++i)
        for (std::size_t j = i + 1; j < copy.size(); ++j) {
            if (c.is_red(copy[i], copy[j]))
                throw std::invalid_argument("greedy_extend: red pair inside the base copy");
            if (h.has_edge(static_cast<int>(i), static_cast<int>(j)) &&
                !c.is_blue(copy[i], copy[j]))
                throw std::invalid_argument("greedy_extend: pattern edge pair is not blue");
        }
    if (!std::holds_alternative<ProperAssignment>(is_proper(c, h, copy)))
        throw std::invalid_argument("greedy_extend: base copy is not proper");

    if (t == 0) return std::get<ProperAssignment>(is_proper(c, h, copy));

    std::vector<int> candidates = c.common_blue_neighborhood(copy);
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        int da = host.degree(a), db = host.degree(b);
        if (da != db) return da < db;
        return a < b;
    });

    Bitset forbidden(host.vertex_count());
    std::vector<int> group(copy);
    for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j)
            forbidden |= host.neighbors(group[i]) & host.neighbors(group[j]);

    std::vector<int> placed;
    std::vector<char> used(host.vertex_count(), 0);
    for (int v : copy) used[v] = 1;
    while (static_cast<int>(placed.size()) < t) {
        int chosen = -1;
        for (int z : candidates) {
            if (used[z]) continue;
            if (!host.neighbors(z).intersects(forbidden)) { chosen = z; break; }
        }
        if (chosen < 0) return Stuck{static_cast<int>(placed.size()), placed};
        used[chosen] = 1;
        for (int w : group) forbidden |= host.neighbors(chosen) & host.neighbors(w);
        group.push_back(chosen);
        placed.push_back(chosen);
    }

    Graph big = join_independent_set(h, t);
    std::vector<int> full(copy);
    full.insert(full.end(), placed.begin(), placed.end());
    auto res = is_proper(c, big, full);
    if (!std::holds_alternative<ProperAssignment>(res))
        throw std::logic_error("greedy_extend: greedy invariant failed verification");
    return std::get<ProperAssignment>(res);
}

} // namespace subturan
