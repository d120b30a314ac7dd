#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subturan/canonical.hpp"
#include "subturan/graph.hpp"

namespace subturan {

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- named constructors ----------------------------------------------

inline Graph cycle_graph(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs k >= 3");
    Graph g(k);
    for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
    return g;
}

inline Graph path_graph(int vertices) {
    Graph g(vertices);
    for (int i = 0; i + 1 < vertices; ++i) g.add_edge(i, i + 1);
    return g;
}

// Parts of the given sizes, all cross edges.
inline Graph complete_multipartite(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("part sizes must be >= 1");
        n += s;
    }
    Graph g(n);
    std::vector<int> part;
    for (std::size_t p = 0; p < sizes.size(); ++p)
        for (int i = 0; i < sizes[p]; ++i) part.push_back(static_cast<int>(p));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[u] != part[v]) g.add_edge(u, v);
    return g;
}

inline Graph complete_bipartite(int s, int t) { return complete_multipartite({s, t}); }

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// Apex vertex k joined to every vertex of C_k.
inline Graph cone_over_cycle(int k) {
    if (k < 3) throw std::invalid_argument("cone_over_cycle needs k >= 3");
    Graph g(k + 1);
    for (int i = 0; i < k; ++i) {
        g.add_edge(i, (i + 1) % k);
        g.add_edge(i, k);
    }
    return g;
}

// K_{s,t} plus a vertex r adjacent to one s-part vertex and the whole
// t-part. Layout: s-part 0..s-1, t-part s..s+t-1, r = s+t.
inline Graph k_plus(int s, int t) {
    if (s < 1 || t < 1) throw std::invalid_argument("k_plus needs s,t >= 1");
    Graph g(s + t + 1);
    int r = s + t;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) g.add_edge(i, s + j);
    g.add_edge(r, 0);
    for (int j = 0; j < t; ++j) g.add_edge(r, s + j);
    return g;
}

// ---- 1-subdivision ----------------------------------------------------

struct SubdivisionLabels {
    std::vector<int> branch;                    // original vertex -> new id
    std::map<std::pair<int, int>, int> bridge;  // original edge (u<v) -> new id
};

// Replace each edge by a path of length two. Branch vertices keep ids
// 0..n-1; bridge ids follow in sorted edge order. Output is bipartite on
// (branch, bridge).
inline std::pair<Graph, SubdivisionLabels> subdivide(const Graph& h) {
    const int n = h.vertex_count();
    auto es = h.edges();
    Graph g(n + static_cast<int>(es.size()));
    SubdivisionLabels lab;
    lab.branch.resize(n);
    for (int v = 0; v < n; ++v) lab.branch[v] = v;
    int next = n;
    for (auto [u, v] : es) {
        lab.bridge[{u, v}] = next;
        g.add_edge(u, next);
        g.add_edge(next, v);
        ++next;
    }
    return {std::move(g), std::move(lab)};
}

inline Graph subdivide_graph(const Graph& h) { return subdivide(h).first; }

// ---- the family F_{1,s,t} ---------------------------------------------

enum class ConnectorMode { Strict, Liberal };

// Members of F_{1,s,t}: start from K_{s,t}^sub with bridges b_ij and a root
// r; for each of y_1..y_s, z_1..z_t in turn pick a connector -- an existing
// b_ij (Strict: only one incident to the current vertex), a fresh vertex,
// or a previously introduced fresh connector -- and join it to the vertex
// and to r. Results deduplicated by canonical form and sorted by it.
inline std::vector<Graph> enumerate_family_F(int s, int t, ConnectorMode mode,
                                             long long leaf_budget = 2'000'000) {
    if (s < 1 || t < 1) throw std::invalid_argument("enumerate_family_F needs s,t >= 1");
    if (s + t > 7) throw resource_error("enumerate_family_F: s+t above desk-scale cap 7");

    const int base_n = s + t + s * t + 1;
    const int root = s + t + s * t;
    auto bridge_id = [&](int i, int j) { return s + t + i * t + j; };

    std::vector<std::pair<int, int>> base_edges;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) {
            base_edges.emplace_back(i, bridge_id(i, j));
            base_edges.emplace_back(bridge_id(i, j), s + j);
        }

    // processing order y_1..y_s then z_1..z_t; vertex ids are 0..s+t-1
    std::vector<int> order(s + t);
    for (int i = 0; i < s + t; ++i) order[i] = i;

    std::map<std::string, Graph> seen;
    long long leaves = 0;

    // choice per step: connector id, plus whether it is a new fresh vertex
    struct Step { int connector; bool fresh; };
    std::vector<Step> chosen;

    auto build_leaf = [&]() {
        int fresh_count = 0;
        for (const auto& st : chosen)
            if (st.fresh) ++fresh_count;
        Graph g(base_n + fresh_count);
        for (auto [u, v] : base_edges) g.add_edge(u, v);
        for (int k = 0; k < s + t; ++k) {
            g.add_edge(chosen[k].connector, order[k]);
            g.add_edge(chosen[k].connector, root);
        }
        std::string form = canonical_form(g);
        seen.emplace(std::move(form), std::move(g));
    };

    auto connectors_for = [&](int vertex, int fresh_so_far) {
        std::vector<Step> out;
        if (mode == ConnectorMode::Strict) {
            if (vertex < s)
                for (int j = 0; j < t; ++j) out.push_back({bridge_id(vertex, j), false});
            else
                for (int i = 0; i < s; ++i) out.push_back({bridge_id(i, vertex - s), false});
        } else {
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < t; ++j) out.push_back({bridge_id(i, j), false});
        }
        for (int f = 0; f < fresh_so_far; ++f) out.push_back({base_n + f, false});
        out.push_back({base_n + fresh_so_far, true}); // a brand new connector
        return out;
    };

    auto rec = [&](auto&& self, int step, int fresh_so_far) -> void {
        if (step == s + t) {
            if (++leaves > leaf_budget)
                throw resource_error("enumerate_family_F: enumeration budget exceeded");
            build_leaf();
            return;
        }
        for (const Step& st : connectors_for(order[step], fresh_so_far)) {
            chosen.push_back(st);
            self(self, step + 1, fresh_so_far + (st.fresh ? 1 : 0));
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0);

    std::vector<Graph> out;
    out.reserve(seen.size());
    for (auto& [form, g] : seen) out.push_back(std::move(g));
    return out;
}

// ---- family specs (CLI currency) ---------------------------------------

struct FamilySpec {
    enum class Kind { Cycle, CompleteBipartite, ConeOverCycle, CompleteTripartite, KPlus, FamilyF, Complete, Path };
    Kind kind;
    int k = 0, s = 0, t = 0;
    ConnectorMode mode = ConnectorMode::Strict;

    // e.g. "cone_cycle:k=4", "kst:s=3,t=4", "family_f:s=2,t=3:strict"
    static FamilySpec parse(const std::string& text);
    Graph build() const; // not valid for FamilyF (a set, not one graph)
    std::string str() const;
};

namespace detail {
inline std::map<std::string, int> parse_params(const std::string& text) {
    std::map<std::string, int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eq = text.find('=', pos);
        if (eq == std::string::npos) throw std::invalid_argument("bad family parameters: " + text);
        std::size_t comma = text.find(',', eq);
        std::string key = text.substr(pos, eq - pos);
        std::string val = text.substr(eq + 1, comma == std::string::npos ? comma : comma - eq - 1);
        out[key] = std::stoi(val);
        pos = comma == std::string::npos ? text.size() : comma + 1;
    }
    return out;
}
} // namespace detail

inline FamilySpec FamilySpec::parse(const std::string& text) {
    std::size_t c1 = text.find(':');
    std::string name = text.substr(0, c1);
    std::string rest = c1 == std::string::npos ? "" : text.substr(c1 + 1);
    std::string mode_part;
    std::size_t c2 = rest.find(':');
    if (c2 != std::string::npos) {
        mode_part = rest.substr(c2 + 1);
        rest = rest.substr(0, c2);
    }
    auto params = detail::parse_params(rest);
    auto get = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument("family spec missing parameter " + key);
        return it->second;
    };
    FamilySpec fs{};
    if (name == "cycle") { fs.kind = Kind::Cycle; fs.k = get("k"); }
    else if (name == "kst") { fs.kind = Kind::CompleteBipartite; fs.s = get("s"); fs.t = get("t"); }
    else if (name == "cone_cycle") { fs.kind = Kind::ConeOverCycle; fs.k = get("k"); }
    else if (name == "k1st") { fs.kind = Kind::CompleteTripartite; fs.s = get("s"); fs.t = get("t"); }
    else if (name == "kplus") { fs.kind = Kind::KPlus; fs.s = get("s"); fs.t = get("t"); }
    else if (name == "complete") { fs.kind = Kind::Complete; fs.k = get("k"); }
    else if (name == "path") { fs.kind = Kind::Path; fs.k = get("k"); }
    else if (name == "family_f") {
        fs.kind = Kind::FamilyF; fs.s = get("s"); fs.t = get("t");
        if (mode_part == "liberal") fs.mode = ConnectorMode::Liberal;
        else if (mode_part.empty() || mode_part == "strict") fs.mode = ConnectorMode::Strict;
        else throw std::invalid_argument("unknown family_f mode " + mode_part);
    } else {
        throw std::invalid_argument("unknown family kind " + name);
    }
    return fs;
}

inline Graph FamilySpec::build() const {
    switch (kind) {
        case Kind::Cycle: return cycle_graph(k);
        case Kind::CompleteBipartite: return complete_bipartite(s, t);
        case Kind::ConeOverCycle: return cone_over_cycle(k);
        case Kind::CompleteTripartite: return complete_multipartite({1, s, t});
        case Kind::KPlus: return k_plus(s, t);
        case Kind::Complete: return complete_graph(k);
        case Kind::Path: return path_graph(k);
        case Kind::FamilyF: throw std::invalid_argument("family_f is a set; use enumerate_family_F");
    }
    throw std::logic_error("unreachable");
}

inline std::string FamilySpec::str() const {
    switch (kind) {
        case Kind::Cycle: return "cycle:k=" + std::to_string(k);
        case Kind::CompleteBipartite: return "kst:s=" + std::to_string(s) + ",t=" + std::to_string(t);
        case Kind::ConeOverCycle: return "cone_cycle:k=" + std::to_string(k);
        case Kind::CompleteTripartite: return "k1st:s=" + std::to_string(s) + ",t=" + std::to_string(t);
        case Kind::KPlus: return "kplus:s=" + std::to_string(s) + ",t=" + std::to_string(t);
        case Kind::Complete: return "complete:k=" + std::to_string(k);
        case Kind::Path: return "path:k=" + std::to_string(k);
        case Kind::FamilyF:
            return "family_f:s=" + std::to_string(s) + ",t=" + std::to_string(t) +
                   (mode == ConnectorMode::Strict ? ":strict" : ":liberal");
    }
    return "?";
}

} // namespace subturan
