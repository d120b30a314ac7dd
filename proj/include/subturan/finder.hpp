#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subturan/colored.hpp"
#include "subturan/families.hpp"
#include "subturan/graph.hpp"
#include "subturan/reduction.hpp"

namespace subturan {

// ---- generic backtracking subgraph search --------------------------------

struct SearchOptions {
    std::uint64_t budget = 10'000'000; // partial-assignment extensions
    int anchor = -1;                   // some pattern vertex must map here
    // veto hook: candidate host vertex hv for pattern vertex pv given the
    // partial map (-1 = unassigned)
    std::function<bool(int pv, int hv, const std::vector<int>&)> admissible;
};

struct NotFound {};
struct BudgetExceeded {
    std::uint64_t spent = 0;
};

using FindResult = std::variant<Embedding, NotFound, BudgetExceeded>;

namespace detail {

// connected ordering maximizing back-degree; seeded at `seed` when given,
// otherwise at a maximum-degree pattern vertex
inline std::vector<int> pattern_order(const Graph& h, int seed = -1) {
    const int n = h.vertex_count();
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    auto pick_seed = [&]() {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!placed[v] && (best < 0 || h.degree(v) > h.degree(best))) best = v;
        return best;
    };
    if (seed >= 0) {
        order.push_back(seed);
        placed[seed] = 1;
    }
    while (static_cast<int>(order.size()) < n) {
        int best = -1, best_back = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int back = 0;
            for (int u : order)
                if (h.has_edge(u, v)) ++back;
            if (back > best_back ||
                (back == best_back && best >= 0 && h.degree(v) > h.degree(best))) {
                best = v;
                best_back = back;
            }
        }
        if (best_back == 0) best = pick_seed();
        order.push_back(best);
        placed[best] = 1;
    }
    return order;
}

struct Searcher {
    const Graph& host;
    const Graph& pattern;
    const SearchOptions& opt;
    std::vector<int> order;       // pattern vertices, most constrained first
    std::vector<int> map;         // pattern vertex -> host vertex or -1
    Bitset used;
    std::uint64_t spent = 0;
    bool out_of_budget = false;

    Searcher(const Graph& g, const Graph& h, const SearchOptions& o, int seed = -1)
        : host(g), pattern(h), opt(o), order(pattern_order(h, seed)),
          map(h.vertex_count(), -1), used(g.vertex_count()) {}

    bool feasible(int pv, int hv) {
        if (host.degree(hv) < pattern.degree(pv)) return false;
        const Bitset& pnb = pattern.neighbors(pv);
        for (int pu = pnb.find_first(); pu >= 0; pu = pnb.find_next(pu))
            if (map[pu] >= 0 && !host.has_edge(map[pu], hv)) return false;
        if (opt.admissible && !opt.admissible(pv, hv, map)) return false;
        return true;
    }

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        int pv = order[depth];
        // candidates: intersection of mapped neighbors' adjacency, else all
        Bitset cand(host.vertex_count());
        bool seeded = false;
        const Bitset& pnb = pattern.neighbors(pv);
        for (int pu = pnb.find_first(); pu >= 0; pu = pnb.find_next(pu)) {
            if (map[pu] < 0) continue;
            if (!seeded) {
                cand = host.neighbors(map[pu]);
                seeded = true;
            } else {
                cand &= host.neighbors(map[pu]);
            }
        }
        if (!seeded) {
            for (int v = 0; v < host.vertex_count(); ++v) cand.set(v);
        }
        cand.subtract(used);
        for (int hv = cand.find_first(); hv >= 0; hv = cand.find_next(hv)) {
            if (++spent > opt.budget) { out_of_budget = true; return false; }
            if (!feasible(pv, hv)) continue;
            map[pv] = hv;
            used.set(hv);
            if (extend(depth + 1)) return true;
            if (out_of_budget) return false;
            map[pv] = -1;
            used.reset(hv);
        }
        return false;
    }
};

} // namespace detail

inline FindResult find_subgraph(const Graph& host, const Graph& pattern,
                                const SearchOptions& opt = {}) {
    if (pattern.vertex_count() == 0) return Embedding{pattern, host, {}};
    if (pattern.vertex_count() > host.vertex_count()) return NotFound{};

    if (opt.anchor >= 0) {
        host.check_vertex(opt.anchor);
        // pin each pattern vertex to the anchor in turn; budget is shared
        std::uint64_t spent = 0;
        SearchOptions sub = opt;
        for (int pv = 0; pv < pattern.vertex_count(); ++pv) {
            sub.budget = opt.budget - spent;
            detail::Searcher s(host, pattern, sub, pv);
            if (!s.feasible(pv, opt.anchor)) continue;
            s.map[pv] = opt.anchor;
            s.used.set(opt.anchor);
            if (s.extend(1)) {
                Embedding e{pattern, host, s.map};
                if (!e.validate()) throw std::logic_error("find_subgraph: invalid embedding");
                return e;
            }
            spent += s.spent;
            if (s.out_of_budget) return BudgetExceeded{spent};
        }
        return NotFound{};
    }

    detail::Searcher s(host, pattern, opt);
    if (s.extend(0)) {
        Embedding e{pattern, host, s.map};
        if (!e.validate()) throw std::logic_error("find_subgraph: invalid embedding");
        return e;
    }
    if (s.out_of_budget) return BudgetExceeded{s.spent};
    return NotFound{};
}

// ---- subdivision witnesses -------------------------------------------------

struct SubdivisionWitness {
    Graph pattern; // the original H, not its subdivision
    Graph host;
    std::vector<int> branch_map;                    // V(H) -> host
    std::map<std::pair<int, int>, int> bridge_map;  // E(H) -> host

    bool validate() const {
        std::vector<char> used(host.vertex_count(), 0);
        if (static_cast<int>(branch_map.size()) != pattern.vertex_count()) return false;
        for (int h : branch_map) {
            if (h < 0 || h >= host.vertex_count() || used[h]) return false;
            used[h] = 1;
        }
        auto es = pattern.edges();
        if (bridge_map.size() != es.size()) return false;
        for (auto [u, v] : es) {
            auto it = bridge_map.find({u, v});
            if (it == bridge_map.end()) return false;
            int b = it->second;
            if (b < 0 || b >= host.vertex_count() || used[b]) return false;
            used[b] = 1;
            if (!host.has_edge(branch_map[u], b) || !host.has_edge(b, branch_map[v])) return false;
        }
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["type"] = "subdivision";
        j["pattern"] = nlohmann::json{{"n", pattern.vertex_count()}};
        j["pattern"]["edges"] = nlohmann::json::array();
        for (auto [u, v] : pattern.edges()) j["pattern"]["edges"].push_back({u, v});
        j["branch"] = nlohmann::json::object();
        for (std::size_t v = 0; v < branch_map.size(); ++v)
            j["branch"][std::to_string(v)] = branch_map[v];
        j["bridges"] = nlohmann::json::object();
        for (const auto& [e, b] : bridge_map)
            j["bridges"]["[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]"] = b;
        return j;
    }
};

using SubdivisionResult = std::variant<SubdivisionWitness, NotFound, BudgetExceeded>;

inline SubdivisionResult find_subdivision(const Graph& host, const Graph& h,
                                          const SearchOptions& opt = {}) {
    auto [hs, labels] = subdivide(h);
    FindResult r = find_subgraph(host, hs, opt);
    if (std::holds_alternative<NotFound>(r)) return NotFound{};
    if (std::holds_alternative<BudgetExceeded>(r)) return std::get<BudgetExceeded>(r);
    const Embedding& e = std::get<Embedding>(r);
    SubdivisionWitness w;
    w.pattern = h;
    w.host = host;
    w.branch_map.resize(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v) w.branch_map[v] = e.map[labels.branch[v]];
    for (const auto& [edge, mid] : labels.bridge) w.bridge_map[edge] = e.map[mid];
    if (!w.validate()) throw std::logic_error("find_subdivision: invalid witness");
    return w;
}

// ---- cycle lift (Lemma 3.2 and the Prop 3.5 trace-back) ---------------------

struct LiftFailed {
    int blocked_vertex = -1;
    std::string reason;
};

using LiftResult = std::variant<SubdivisionWitness, LiftFailed>;

// Turn an embedded C_{2k} alternating between two layers into a witness for
// the subdivided cone over C_k. Cycle vertices in the deeper layer become
// branch vertices. Spoke bridges toward the root: for a cycle in L1 u L2 a
// fresh L1 back-neighbor chosen greedily (it is adjacent to the root); for a
// cycle in L2 u L3 the stored tree parents, which must be pairwise distinct.
inline LiftResult lift_cycle_to_cone(const Graph& g, const LayeredDecomposition& layers,
                                     const std::vector<int>& cycle, int min_backdegree,
                                     const std::map<int, int>* parent = nullptr) {
    const int n2k = static_cast<int>(cycle.size());
    if (n2k < 6 || n2k % 2 != 0)
        throw std::invalid_argument("lift_cycle_to_cone: cycle length must be even and >= 6");
    const int k = n2k / 2;

    std::vector<int> depth_of(g.vertex_count(), -1);
    for (std::size_t d = 0; d < layers.layers.size(); ++d)
        for (int v : layers.layers[d]) depth_of[v] = static_cast<int>(d);

    int deep = -1;
    for (int v : cycle) {
        if (depth_of[v] < 0) throw std::invalid_argument("lift: cycle vertex outside decomposition");
        deep = std::max(deep, depth_of[v]);
    }
    int shallow = deep - 1;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int want = (depth_of[cycle[0]] == deep) == (i % 2 == 0) ? deep : shallow;
        if (depth_of[cycle[i]] != want)
            throw std::invalid_argument("lift: cycle does not alternate between two layers");
    }

    // rotate so position 0 sits in the deeper layer
    std::vector<int> cyc(cycle);
    if (depth_of[cyc[0]] != deep)
        std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());

    Bitset used(g.vertex_count());
    for (int v : cyc) used.set(v);
    used.set(layers.root);

    std::vector<int> branch(k), spoke(k);
    Bitset in_shallow_layer(g.vertex_count());
    for (int v : layers.layer(shallow)) in_shallow_layer.set(v);

    for (int i = 0; i < k; ++i) {
        int x = cyc[2 * i];
        branch[i] = x;
        if ((g.neighbors(x) & in_shallow_layer).count() < min_backdegree)
            return LiftFailed{x, "back-degree below the stated minimum"};
        if (shallow == 1) {
            Bitset avail = g.neighbors(x) & in_shallow_layer;
            avail.subtract(used);
            int w = avail.find_first();
            if (w < 0) return LiftFailed{x, "fresh back-neighbors exhausted"};
            spoke[i] = w;
            used.set(w);
        } else {
            if (!parent) return LiftFailed{x, "deep lift needs stored tree parents"};
            auto it = parent->find(x);
            if (it == parent->end()) return LiftFailed{x, "cycle vertex has no stored parent"};
            int w = it->second;
            if (used.test(w)) return LiftFailed{x, "parents not pairwise distinct"};
            if (!g.has_edge(w, layers.root))
                return LiftFailed{x, "stored parent is not adjacent to the root"};
            spoke[i] = w;
            used.set(w);
        }
    }

    SubdivisionWitness w;
    w.pattern = cone_over_cycle(k);
    w.host = g;
    w.branch_map.resize(k + 1);
    for (int i = 0; i < k; ++i) w.branch_map[i] = branch[i];
    w.branch_map[k] = layers.root; // apex
    for (int i = 0; i < k; ++i) {
        int a = i, b = (i + 1) % k;
        w.bridge_map[{std::min(a, b), std::max(a, b)}] = cyc[2 * i + 1];
        w.bridge_map[{std::min(i, k), std::max(i, k)}] = spoke[i];
    }
    if (!w.validate()) throw std::logic_error("lift_cycle_to_cone: invalid witness");
    return w;
}

// ---- the section-3 pipeline -------------------------------------------------

struct PipelineConfig {
    std::uint64_t budget = 10'000'000;
    double slack = 0.5;
    int min_backdegree = 1;
};

struct PipelineTrace {
    int root = -1;
    std::vector<int> layer_sizes;
    std::optional<PeelReport> peel_l1l2;
    std::string stage_a;
    std::optional<nlohmann::json> tree;
    std::string stage_b;
    std::string outcome;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["root"] = root;
        j["layer_sizes"] = layer_sizes;
        if (peel_l1l2) j["peel_l1l2"] = peel_l1l2->to_json();
        j["stage_a"] = stage_a;
        if (tree) j["tree"] = *tree;
        j["stage_b"] = stage_b;
        j["outcome"] = outcome;
        return j;
    }
};

struct PipelineOutcome {
    std::optional<SubdivisionWitness> witness; // empty = not found by this strategy
    PipelineTrace trace;
};

namespace detail {

// embedded cycle pattern 0-1-...-m-0 mapped back to a host vertex sequence
inline std::vector<int> cycle_sequence(const Embedding& e) {
    return e.map;
}

} // namespace detail

// Execute the Theorem 1.3 proof as a search strategy: root at a maximum
// degree vertex, try C_2k in G[L1 u L2] and lift greedily; otherwise extract
// an essentially regular tree and search G[T2 u L3] for a C_2k whose
// level-2 vertices lie in k distinct children sets, lifting through the
// stored parents. Failure is a trace, never a nonexistence proof.
inline PipelineOutcome pipeline_cone_cycle(const Graph& g, int k, PipelineConfig cfg = {}) {
    if (k < 3) throw std::invalid_argument("pipeline_cone_cycle: k >= 3");
    PipelineOutcome out;
    PipelineTrace& tr = out.trace;

    if (g.vertex_count() == 0 || g.edge_count() == 0) {
        tr.outcome = "empty host";
        return out;
    }
    int root = 0;
    for (int v = 1; v < g.vertex_count(); ++v)
        if (g.degree(v) > g.degree(root)) root = v;
    tr.root = root;

    auto layers = bfs_layers(g, root, 3);
    for (const auto& l : layers.layers) tr.layer_sizes.push_back(static_cast<int>(l.size()));

    Graph cycle = cycle_graph(2 * k);

    // --- stage A: C_2k inside G[L1 u L2], greedy lift to the root
    if (layers.layers.size() > 2 && !layers.layer(2).empty()) {
        const auto& l1 = layers.layer(1);
        const auto& l2 = layers.layer(2);
        Bitset keep(g.vertex_count());
        for (int v : l1) keep.set(v);
        for (int v : l2) keep.set(v);
        std::vector<int> ids;
        Graph both = g.induced(keep, &ids);
        Bitset pa(both.vertex_count()), pb(both.vertex_count());
        Bitset l1set(g.vertex_count());
        for (int v : l1) l1set.set(v);
        // strip same-layer edges so the subgraph is bipartite L1 x L2
        Graph cross(both.vertex_count());
        for (auto [u, v] : both.edges())
            if (l1set.test(ids[u]) != l1set.test(ids[v])) cross.add_edge(u, v);
        for (int v = 0; v < cross.vertex_count(); ++v)
            (l1set.test(ids[v]) ? pa : pb).set(v);
        if (cross.edge_count() > 0) {
            auto [peeled, rep] = two_sided_peel(BipartiteGraph(cross, pa, pb));
            tr.peel_l1l2 = rep;
            // rep.removed names cross-graph ids; search the survivors with
            // exact id bookkeeping back into g
            Bitset survivors(cross.vertex_count());
            {
                std::vector<char> dropped(cross.vertex_count(), 0);
                for (int v : rep.removed) dropped[v] = 1;
                for (int v = 0; v < cross.vertex_count(); ++v)
                    if (!dropped[v]) survivors.set(v);
            }
            std::vector<int> sub_ids;
            Graph stage_a_host = cross.induced(survivors, &sub_ids);
            SearchOptions so;
            so.budget = cfg.budget;
            FindResult fr2 = find_subgraph(stage_a_host, cycle, so);
            if (auto* emb = std::get_if<Embedding>(&fr2)) {
                std::vector<int> host_cycle;
                for (int v : detail::cycle_sequence(*emb)) host_cycle.push_back(ids[sub_ids[v]]);
                auto lifted = lift_cycle_to_cone(g, layers, host_cycle, cfg.min_backdegree);
                if (auto* w = std::get_if<SubdivisionWitness>(&lifted)) {
                    tr.stage_a = "cycle found and lifted";
                    tr.outcome = "witness via L1-L2";
                    out.witness = *w;
                    return out;
                }
                tr.stage_a = "cycle found, lift failed: " + std::get<LiftFailed>(lifted).reason;
            } else if (std::holds_alternative<BudgetExceeded>(fr2)) {
                tr.stage_a = "budget exhausted";
            } else {
                tr.stage_a = "no C_2k in G[L1 u L2]";
            }
        } else {
            tr.stage_a = "no edges between L1 and L2";
        }
    } else {
        tr.stage_a = "L2 empty";
        tr.outcome = "not found: graph too shallow";
        return out;
    }

    // --- stage B: essentially regular tree, constrained C_2k in G[T2 u L3]
    if (layers.layers.size() <= 3 || layers.layer(3).empty()) {
        tr.stage_b = "L3 empty";
        tr.outcome = "not found: " + tr.stage_a + "; no depth-3 layer";
        return out;
    }
    const auto& l1 = layers.layer(1);
    long long cross12 = 0;
    for (int v : layers.layer(2)) {
        Bitset nb = g.neighbors(v);
        Bitset l1set(g.vertex_count());
        for (int u : l1) l1set.set(u);
        nb &= l1set;
        cross12 += nb.count();
    }
    int d1 = static_cast<int>(l1.size());
    int d2 = std::max<int>(1, static_cast<int>(cross12 / std::max<std::size_t>(1, l1.size())));
    auto tres = extract_regular_tree(g, root, d1, d2, cfg.slack);
    if (std::holds_alternative<Infeasible>(tres)) {
        tr.stage_b = "tree extraction infeasible";
        tr.outcome = "not found: " + tr.stage_a + "; tree infeasible";
        return out;
    }
    const RegularTree& tree = std::get<RegularTree>(tres);
    tr.tree = tree.to_json();

    std::map<int, int> parent;
    std::vector<int> t2;
    for (const auto& [v, kids] : tree.children)
        for (int c : kids) {
            parent[c] = v;
            t2.push_back(c);
        }

    Bitset t2set(g.vertex_count());
    for (int v : t2) t2set.set(v);
    Bitset l3set(g.vertex_count());
    for (int v : layers.layer(3)) l3set.set(v);

    Bitset keep = t2set | l3set;
    std::vector<int> ids;
    Graph sub = g.induced(keep, &ids);
    Graph crossb(sub.vertex_count());
    for (auto [u, v] : sub.edges())
        if (t2set.test(ids[u]) != t2set.test(ids[v])) crossb.add_edge(u, v);

    SearchOptions so;
    so.budget = cfg.budget;
    so.admissible = [&](int, int hv, const std::vector<int>& partial) {
        int host_v = ids[hv];
        if (!t2set.test(host_v)) return true;
        int p = parent.at(host_v);
        for (int pv = 0; pv < static_cast<int>(partial.size()); ++pv) {
            if (partial[pv] < 0) continue;
            int other = ids[partial[pv]];
            if (t2set.test(other) && parent.at(other) == p) return false;
        }
        return true;
    };
    FindResult fr = find_subgraph(crossb, cycle, so);
    if (auto* emb = std::get_if<Embedding>(&fr)) {
        std::vector<int> host_cycle;
        for (int v : detail::cycle_sequence(*emb)) host_cycle.push_back(ids[v]);
        auto lifted = lift_cycle_to_cone(g, layers, host_cycle, cfg.min_backdegree, &parent);
        if (auto* w = std::get_if<SubdivisionWitness>(&lifted)) {
            tr.stage_b = "constrained cycle found and lifted";
            tr.outcome = "witness via L2-L3";
            out.witness = *w;
            return out;
        }
        tr.stage_b = "constrained cycle found, lift failed: " + std::get<LiftFailed>(lifted).reason;
    } else if (std::holds_alternative<BudgetExceeded>(fr)) {
        tr.stage_b = "budget exhausted";
    } else {
        tr.stage_b = "no constrained C_2k in G[T2 u L3]";
    }
    tr.outcome = "not found: " + tr.stage_a + "; " + tr.stage_b;
    return out;
}

// ---- Lemma 5.1: two-sided proper stars --------------------------------------

enum class TwoSidedMode { Exact, PartitionLowerBound };

struct TwoSidedStars {
    unsigned long long count = 0;
    std::vector<std::vector<int>> tuples; // exact mode only
    std::vector<std::vector<int>> blocks; // lower-bound mode only
};

// Count (or lower-bound) s-subsets of the common blue neighborhood of x and
// y making both centered stars proper. The lower bound follows the Lemma 5.1
// proof: diagonal shells of the two neighbor lists, shared prefix first,
// left-subtracted and grouped into Theta(window) blocks.
inline TwoSidedStars two_sided_proper_stars(const ColoredPairGraph& c, int x, int y, int s,
                                            TwoSidedMode mode, int window = 0,
                                            long long exact_cap = 200'000) {
    if (s < 1) throw std::invalid_argument("two_sided_proper_stars: s >= 1");
    const Graph& host = c.host().graph();
    c.a_index(x);
    c.a_index(y);
    std::vector<int> nbxy = c.common_blue_neighborhood({x, y});
    nbxy.erase(std::remove_if(nbxy.begin(), nbxy.end(), [&](int u) { return u == x || u == y; }),
               nbxy.end());

    TwoSidedStars out;
    if (mode == TwoSidedMode::Exact) {
        // C(n, s) enumeration guard
        double est = 1;
        for (int i = 0; i < s; ++i) est *= static_cast<double>(nbxy.size() - i) / (i + 1);
        if (est > static_cast<double>(exact_cap))
            throw resource_error("two_sided_proper_stars: exact enumeration above cap");
        Graph star(1 + s);
        for (int i = 1; i <= s; ++i) star.add_edge(0, i);
        std::vector<int> pick;
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (static_cast<int>(pick.size()) == s) {
                std::vector<int> cx{x}, cy{y};
                cx.insert(cx.end(), pick.begin(), pick.end());
                cy.insert(cy.end(), pick.begin(), pick.end());
                if (std::holds_alternative<ProperAssignment>(is_proper(c, star, cx)) &&
                    std::holds_alternative<ProperAssignment>(is_proper(c, star, cy))) {
                    ++out.count;
                    out.tuples.push_back(pick);
                }
                return;
            }
            for (std::size_t i = from; i < nbxy.size(); ++i) {
                pick.push_back(nbxy[i]);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    // partition lower bound
    if (window <= 0) {
        int mindeg = -1;
        for (int b : c.host().b_vertices()) {
            int d = host.degree(b);
            if (d > 0) mindeg = mindeg < 0 ? d : std::min(mindeg, d);
        }
        window = std::max(1, mindeg);
    }
    // Two candidates conflict when they share a possible bridge toward x or
    // toward y; a transversal across conflict-closed parts then has pairwise
    // disjoint candidate sets on both sides, so both stars are proper no
    // matter which representatives are picked. Parts are conflict components.
    const int m = static_cast<int>(nbxy.size());
    Bitset xy_bridges = host.neighbors(x) | host.neighbors(y);
    std::vector<int> comp(m, -1);
    int ncomp = 0;
    for (int i = 0; i < m; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = ncomp;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            Bitset wa = host.neighbors(nbxy[a]) & xy_bridges;
            for (int j = 0; j < m; ++j) {
                if (comp[j] >= 0) continue;
                if (wa.intersects(host.neighbors(nbxy[j]))) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
        }
        ++ncomp;
    }
    // order components by the diagonal of the two neighbor lists, shared
    // prefix first, so the grouping follows the Lemma 5.1 listing
    auto list_with_shared_prefix = [&](int v, int other) {
        std::vector<int> shared, rest;
        const Bitset& nv = host.neighbors(v);
        for (int b = nv.find_first(); b >= 0; b = nv.find_next(b))
            (host.neighbors(other).test(b) ? shared : rest).push_back(b);
        shared.insert(shared.end(), rest.begin(), rest.end());
        return shared;
    };
    std::vector<int> bx = list_with_shared_prefix(x, y);
    std::vector<int> by = list_with_shared_prefix(y, x);
    std::vector<int> first_shell(ncomp, INT32_MAX);
    std::size_t diag = std::max(bx.size(), by.size());
    for (int i = 0; i < m; ++i) {
        for (std::size_t sh = 0; sh < diag; ++sh) {
            bool touched = (sh < bx.size() && host.has_edge(bx[sh], nbxy[i])) ||
                           (sh < by.size() && host.has_edge(by[sh], nbxy[i]));
            if (touched) {
                first_shell[comp[i]] =
                    std::min(first_shell[comp[i]], static_cast<int>(sh));
                break;
            }
        }
    }
    std::vector<int> comp_order(ncomp);
    for (int i = 0; i < ncomp; ++i) comp_order[i] = i;
    std::stable_sort(comp_order.begin(), comp_order.end(),
                     [&](int a, int b) { return first_shell[a] < first_shell[b]; });

    std::vector<int> cur;
    for (int ci : comp_order) {
        for (int i = 0; i < m; ++i)
            if (comp[i] == ci) cur.push_back(nbxy[i]);
        if (2 * static_cast<int>(cur.size()) >= window) {
            out.blocks.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) {
        if (!out.blocks.empty() && 2 * static_cast<int>(cur.size()) <= window)
            out.blocks.back().insert(out.blocks.back().end(), cur.begin(), cur.end());
        else
            out.blocks.push_back(std::move(cur));
    }
    std::vector<unsigned long long> e(s + 1, 0);
    e[0] = 1;
    for (const auto& blk : out.blocks) {
        unsigned long long size = blk.size();
        for (int k2 = s; k2 >= 1; --k2) e[k2] += e[k2 - 1] * size;
    }
    out.count = e[s];
    return out;
}

// ---- Lemma 5.2: the clique dichotomy ----------------------------------------

struct DichotomyAnchor {
    bool at_x = false;
    int u_index = -1; // valid when !at_x
};

struct DichotomyResult {
    int r = 0;                  // size of the maximal K_{s+1,r}^+ found
    std::vector<int> b_used;    // bridge set of the maximal copy
    int b_star = -1;            // pigeonhole winner
    DichotomyAnchor anchor;
    CliqueList cliques;         // non-red s-cliques inside N(b*) cap P'
    ProperAssignment base;      // the maximal proper copy
};

struct Saturated {
    ProperAssignment assignment; // a proper K_{s+1,t}^+ copy: the target exists
};

using DichotomyOutcome = std::variant<DichotomyResult, Saturated>;

// pattern for x, u_1..u_s, y_1..y_r with edges (x,u_1), (x,y_j), (u_i,y_j)
inline Graph k_plus_pattern(int s, int r) {
    Graph g(1 + s + r);
    g.add_edge(0, 1);
    for (int j = 0; j < r; ++j) {
        g.add_edge(0, 1 + s + j);
        for (int i = 0; i < s; ++i) g.add_edge(1 + i, 1 + s + j);
    }
    return g;
}

inline DichotomyOutcome dichotomy_extract(const ColoredPairGraph& c, int x,
                                          const std::vector<int>& tuple,
                                          const std::vector<int>& pprime, int t,
                                          long long clique_cap = 100'000) {
    const int s = static_cast<int>(tuple.size());
    if (s < 1) throw std::invalid_argument("dichotomy_extract: empty tuple");
    const Graph& host = c.host().graph();

    // precondition: P' really is the two-sided proper-star set of (x, tuple)
    Graph star(1 + s);
    for (int i = 1; i <= s; ++i) star.add_edge(0, i);
    {
        std::vector<int> cx{x};
        cx.insert(cx.end(), tuple.begin(), tuple.end());
        for (int i = 1; i <= s; ++i)
            if (!c.is_blue(x, tuple[i - 1]))
                throw std::invalid_argument("dichotomy_extract: (x,u_i) must be blue");
        if (!std::holds_alternative<ProperAssignment>(is_proper(c, star, cx)))
            throw std::invalid_argument("dichotomy_extract: K^x star is not proper");
    }
    for (int y : pprime) {
        std::vector<int> cy{y};
        cy.insert(cy.end(), tuple.begin(), tuple.end());
        bool blue = true;
        for (int u : tuple)
            if (!c.is_blue(y, u)) blue = false;
        if (!blue || !std::holds_alternative<ProperAssignment>(is_proper(c, star, cy)))
            throw std::invalid_argument("dichotomy_extract: P' member fails the two-sided star condition");
    }

    // greedy maximal proper K_{s+1,r}^+
    std::vector<int> ys;
    ProperAssignment current;
    {
        Graph pat = k_plus_pattern(s, 0);
        std::vector<int> copy{x};
        copy.insert(copy.end(), tuple.begin(), tuple.end());
        auto pr = is_proper(c, pat, copy);
        if (!std::holds_alternative<ProperAssignment>(pr))
            throw std::invalid_argument("dichotomy_extract: edge (x,u_1) admits no bridge");
        current = std::get<ProperAssignment>(pr);
    }
    for (int y : pprime) {
        if (static_cast<int>(ys.size()) >= t) break;
        if (y == x || std::find(tuple.begin(), tuple.end(), y) != tuple.end()) continue;
        if (std::find(ys.begin(), ys.end(), y) != ys.end()) continue;
        std::vector<int> trial_ys(ys);
        trial_ys.push_back(y);
        Graph pat = k_plus_pattern(s, static_cast<int>(trial_ys.size()));
        std::vector<int> copy{x};
        copy.insert(copy.end(), tuple.begin(), tuple.end());
        copy.insert(copy.end(), trial_ys.begin(), trial_ys.end());
        bool colored = true;
        for (auto [u, v] : pat.edges())
            if (c.color(copy[u], copy[v]) == PairColor::Uncolored) { colored = false; break; }
        if (!colored) continue;
        auto pr = is_proper(c, pat, copy);
        if (std::holds_alternative<ProperAssignment>(pr)) {
            ys = std::move(trial_ys);
            current = std::get<ProperAssignment>(pr);
        }
    }

    if (static_cast<int>(ys.size()) >= t) return Saturated{std::move(current)};

    DichotomyResult out;
    out.r = static_cast<int>(ys.size());
    out.base = current;
    for (const auto& [e, b] : current.bridges) out.b_used.push_back(b);
    std::sort(out.b_used.begin(), out.b_used.end());

    // pigeonhole: the used bridge covering the most remaining P' vertices
    std::vector<int> remaining;
    for (int y : pprime)
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) remaining.push_back(y);
    int best_cover = -1;
    for (int b : out.b_used) {
        int cover = 0;
        for (int y : remaining)
            if (host.has_edge(b, y)) ++cover;
        if (cover > best_cover) {
            best_cover = cover;
            out.b_star = b;
        }
    }

    out.anchor.at_x = host.has_edge(out.b_star, x);
    if (!out.anchor.at_x) {
        for (int i = 0; i < s; ++i)
            if (host.has_edge(out.b_star, tuple[i])) { out.anchor.u_index = i; break; }
    }

    std::vector<int> scope;
    for (int y : pprime)
        if (host.has_edge(out.b_star, y)) scope.push_back(y);
    if (s == 1) {
        // singletons are trivially non-red cliques
        for (int y : scope) {
            if (static_cast<long long>(out.cliques.cliques.size()) >= clique_cap) {
                out.cliques.truncated = true;
                break;
            }
            out.cliques.cliques.push_back({y});
        }
    } else if (static_cast<int>(scope.size()) >= s) {
        out.cliques = enumerate_non_red_cliques(c, scope, s, clique_cap);
    }
    return out;
}

} // namespace subturan
