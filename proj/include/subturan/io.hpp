#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "subturan/graph.hpp"

namespace subturan {

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- graph6 ----------------------------------------------------------
// Header: byte 63+n for n <= 62, else 126 followed by three 6-bit chunks
// of n, each offset by 63. Body: upper-triangle bits in column order
// (0,1),(0,2),(1,2),(0,3),... packed 6 per byte, MSB first, offset by 63.

inline std::string write_graph6(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 258047) throw format_error("graph6: vertex count too large");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    }
    int acc = 0, nb = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nb == 6) { out.push_back(static_cast<char>(63 + acc)); acc = 0; nb = 0; }
        }
    if (nb) out.push_back(static_cast<char>(63 + (acc << (6 - nb))));
    return out;
}

inline Graph read_graph6(const std::string& line) {
    std::size_t pos = 0;
    auto need = [&](std::size_t k) {
        if (pos + k > line.size()) throw format_error("graph6: truncated input");
    };
    auto val = [&](std::size_t i) {
        unsigned char c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126) throw format_error("graph6: byte out of range");
        return static_cast<int>(c - 63);
    };
    need(1);
    int n;
    if (static_cast<unsigned char>(line[0]) == 126) {
        need(4);
        n = (val(1) << 12) | (val(2) << 6) | val(3);
        pos = 4;
    } else {
        n = val(0);
        pos = 1;
    }
    Graph g(n);
    int bits = n * (n - 1) / 2;
    need((bits + 5) / 6);
    int bi = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bi) {
            int byte = val(pos + bi / 6);
            if ((byte >> (5 - bi % 6)) & 1) g.add_edge(i, j);
        }
    return g;
}

// ---- JSON ------------------------------------------------------------
// {"n": int, "edges": [[u,v],...], "parts": optional [[...],[...]]}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
    return j;
}

inline nlohmann::json graph_to_json(const BipartiteGraph& g) {
    nlohmann::json j = graph_to_json(g.graph());
    j["parts"] = {g.a_vertices(), g.b_vertices()};
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("edges")) throw format_error("graph json: missing n/edges");
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw format_error("graph json: bad edge");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

inline BipartiteGraph bipartite_from_json(const nlohmann::json& j) {
    Graph g = graph_from_json(j);
    if (!j.contains("parts")) throw format_error("graph json: missing parts");
    Bitset a(g.vertex_count()), b(g.vertex_count());
    for (int v : j.at("parts").at(0).get<std::vector<int>>()) a.set(v);
    for (int v : j.at("parts").at(1).get<std::vector<int>>()) b.set(v);
    return BipartiteGraph(g, a, b);
}

// File loader sniffing graph6 vs JSON. JSON files start with '{'.
inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw format_error("empty graph file " + path);
    if (text[first] == '{') return graph_from_json(nlohmann::json::parse(text));
    std::size_t eol = text.find_first_of("\r\n", first);
    return read_graph6(text.substr(first, eol == std::string::npos ? eol : eol - first));
}

inline void save_graph6(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw format_error("cannot write " + path);
    out << write_graph6(g) << "\n";
}

} // namespace subturan
