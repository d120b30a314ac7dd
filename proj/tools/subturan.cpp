// Command-line front end: generators, reductions, colorings, finders and
// exact solvers wired into reproducible batch runs.
//
// Exit codes: 0 success/found, 2 usage or I/O or cap error, 3 not found,
// 4 budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subturan/canonical.hpp"
#include "subturan/colored.hpp"
#include "subturan/extremal.hpp"
#include "subturan/families.hpp"
#include "subturan/finder.hpp"
#include "subturan/graph.hpp"
#include "subturan/io.hpp"
#include "subturan/reduction.hpp"

using namespace subturan;
using nlohmann::json;

namespace {

int cap_override(int fallback) {
    const char* env = std::getenv("SUBTURAN_CAP_OVERRIDE");
    if (!env) return fallback;
    try {
        int v = std::stoi(env);
        return std::max(v, fallback);
    } catch (...) {
        return fallback;
    }
}

void emit_graph(const Graph& g, const std::string& format, std::ostream& out) {
    if (format == "json")
        out << graph_to_json(g).dump() << "\n";
    else
        out << write_graph6(g) << "\n";
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw format_error("cannot write " + path);
    return file;
}

// witness files carry their own pattern so `verify` needs only the host
json witness_json(const SubdivisionWitness& w) { return w.to_json(); }

json witness_json(const Embedding& e) {
    json j;
    j["type"] = "embedding";
    j["pattern"] = graph_to_json(e.pattern);
    j["map"] = json::object();
    for (std::size_t v = 0; v < e.map.size(); ++v) j["map"][std::to_string(v)] = e.map[v];
    return j;
}

int run_gen(const std::string& spec_text, bool sub, bool list, const std::string& format,
            const std::string& out_path) {
    FamilySpec spec = FamilySpec::parse(spec_text);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    if (spec.kind == FamilySpec::Kind::FamilyF) {
        auto fam = enumerate_family_F(spec.s, spec.t, spec.mode);
        for (const Graph& g : fam) emit_graph(sub ? subdivide_graph(g) : g, format, out);
        if (list) std::cerr << "count " << fam.size() << "\n";
        return 0;
    }
    Graph g = spec.build();
    if (!sub) {
        emit_graph(g, format, out);
        return 0;
    }
    auto [gs, labels] = subdivide(g);
    if (format == "json") {
        json j = graph_to_json(gs);
        j["labels"] = json::object();
        j["labels"]["branch"] = labels.branch;
        j["labels"]["bridge"] = json::object();
        for (const auto& [e, b] : labels.bridge)
            j["labels"]["bridge"]["[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]"] = b;
        out << j.dump() << "\n";
    } else {
        emit_graph(gs, format, out);
    }
    return 0;
}

int run_find(const std::string& host_path, const std::string& pattern_spec, bool sub,
             const std::string& mode, std::uint64_t budget, const std::string& witness_path,
             const std::string& trace_path) {
    Graph host = load_graph(host_path);
    FamilySpec spec = FamilySpec::parse(pattern_spec);

    std::optional<json> witness;
    bool budget_hit = false;

    if (mode == "pipeline") {
        if (spec.kind != FamilySpec::Kind::ConeOverCycle)
            throw std::invalid_argument("pipeline mode supports cone_cycle patterns only");
        PipelineConfig cfg;
        cfg.budget = budget;
        auto out = pipeline_cone_cycle(host, spec.k, cfg);
        if (!trace_path.empty()) {
            std::ofstream tf(trace_path);
            tf << out.trace.to_json().dump(2) << "\n";
        }
        if (out.witness) witness = witness_json(*out.witness);
    } else {
        Graph pattern = spec.build();
        SearchOptions so;
        so.budget = budget;
        if (sub) {
            auto r = find_subdivision(host, pattern, so);
            if (auto* w = std::get_if<SubdivisionWitness>(&r)) witness = witness_json(*w);
            budget_hit = std::holds_alternative<BudgetExceeded>(r);
        } else {
            auto r = find_subgraph(host, pattern, so);
            if (auto* e = std::get_if<Embedding>(&r)) witness = witness_json(*e);
            budget_hit = std::holds_alternative<BudgetExceeded>(r);
        }
    }

    if (witness) {
        std::ofstream file;
        std::ostream& out = open_out(file, witness_path);
        out << witness->dump(2) << "\n";
        return 0;
    }
    return budget_hit ? 4 : 3;
}

int run_verify(const std::string& witness_path, const std::string& host_path) {
    Graph host = load_graph(host_path);
    std::ifstream in(witness_path);
    if (!in) throw format_error("cannot open " + witness_path);
    json j = json::parse(in);
    std::string type = j.value("type", "proper");

    auto parse_edge_key = [](const std::string& key) {
        // "[u,v]"
        auto comma = key.find(',');
        int u = std::stoi(key.substr(1, comma - 1));
        int v = std::stoi(key.substr(comma + 1, key.size() - comma - 2));
        return std::pair<int, int>{u, v};
    };

    bool ok = false;
    if (type == "subdivision") {
        SubdivisionWitness w;
        w.pattern = graph_from_json(j.at("pattern"));
        w.host = host;
        w.branch_map.resize(w.pattern.vertex_count());
        for (auto& [k, v] : j.at("branch").items()) w.branch_map[std::stoi(k)] = v.get<int>();
        for (auto& [k, v] : j.at("bridges").items()) w.bridge_map[parse_edge_key(k)] = v.get<int>();
        ok = w.validate();
    } else if (type == "embedding") {
        Embedding e;
        e.pattern = graph_from_json(j.at("pattern"));
        e.host = host;
        e.map.resize(e.pattern.vertex_count());
        for (auto& [k, v] : j.at("map").items()) e.map[std::stoi(k)] = v.get<int>();
        ok = e.validate();
    } else if (type == "proper") {
        // colored-module proper assignment: {"pattern": ..., "copy": {...},
        // "bridges": {"[u,v]": b}}
        Graph pattern = graph_from_json(j.at("pattern"));
        ProperAssignment pa;
        pa.copy.resize(pattern.vertex_count());
        for (auto& [k, v] : j.at("copy").items()) pa.copy[std::stoi(k)] = v.get<int>();
        for (auto& [k, v] : j.at("bridges").items()) pa.bridges[parse_edge_key(k)] = v.get<int>();
        ok = pa.validate(pattern, host);
    } else {
        throw format_error("unknown witness type " + type);
    }
    std::cout << (ok ? "valid" : "INVALID") << "\n";
    return ok ? 0 : 3;
}

int run_color_stats(const std::string& host_path, const std::string& pattern_spec) {
    Graph g = load_graph(host_path);
    auto bp = bipartition_of(g);
    auto* bg = std::get_if<BipartiteGraph>(&bp);
    if (!bg) throw std::invalid_argument("color-stats host must be bipartite");
    Graph pattern = FamilySpec::parse(pattern_spec).build();
    ColoredPairGraph c(*bg, pattern.edge_count());
    auto st = blue_stats(c);
    json out;
    out["threshold"] = pattern.edge_count();
    out["a_size"] = bg->size_a();
    out["b_size"] = bg->size_b();
    out["blue_edges"] = st.blue_edges;
    out["max_blue_vertex"] = st.max_blue_vertex;
    out["hypothesis_ratio"] = st.hypothesis_ratio;
    std::cout << out.dump(2) << "\n";
    return 0;
}

void csv_record(std::ostream& out, const ExtremalRecord& rec, const std::string& pattern_name) {
    out << rec.n;
    if (rec.m >= 0) out << "," << rec.m;
    out << "," << pattern_name << "," << rec.value << "," << rec.runtime_ms << ","
        << write_graph6(rec.witness) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subturan: subdivision Turan toolkit"};
    app.require_subcommand(1);

    // --- gen
    std::string gen_spec, gen_format = "graph6", gen_out;
    bool gen_sub = false, gen_list = false;
    auto* gen = app.add_subcommand("gen", "generate a named family graph");
    gen->add_option("spec", gen_spec, "family spec, e.g. cone_cycle:k=4")->required();
    gen->add_flag("--sub", gen_sub, "emit the 1-subdivision");
    gen->add_flag("--list", gen_list, "report member count for family_f");
    gen->add_option("--format", gen_format, "graph6|json")->check(CLI::IsMember({"graph6", "json"}));
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");

    // --- subdivide
    std::string sub_in, sub_out, sub_format = "graph6";
    auto* subc = app.add_subcommand("subdivide", "1-subdivision of a graph file");
    subc->add_option("input", sub_in)->required();
    subc->add_option("--format", sub_format)->check(CLI::IsMember({"graph6", "json"}));
    subc->add_option("-o,--out", sub_out);

    // --- color-stats
    std::string cs_host, cs_pattern;
    auto* cs = app.add_subcommand("color-stats", "blue/red pair statistics of a bipartite host");
    cs->add_option("host", cs_host)->required();
    cs->add_option("--pattern", cs_pattern, "pattern spec fixing the threshold")->required();

    // --- find
    std::string find_host, find_pattern, find_mode = "generic", find_out, find_trace;
    bool find_sub = false;
    std::uint64_t find_budget = 10'000'000;
    auto* find = app.add_subcommand("find", "search for a pattern or its subdivision");
    find->add_option("host", find_host)->required();
    find->add_option("--pattern", find_pattern)->required();
    find->add_flag("--sub", find_sub, "search for the 1-subdivision of the pattern");
    find->add_option("--mode", find_mode)->check(CLI::IsMember({"generic", "pipeline"}));
    find->add_option("--budget", find_budget);
    find->add_option("-o,--out", find_out, "witness JSON path");
    find->add_option("--trace", find_trace, "pipeline trace JSON path");

    // --- verify
    std::string ver_witness, ver_host;
    auto* ver = app.add_subcommand("verify", "re-check a witness file against its host");
    ver->add_option("witness", ver_witness)->required();
    ver->add_option("--host", ver_host)->required();

    // --- extremal
    std::string ex_pattern, ex_out;
    int ex_n = 0;
    auto* ex = app.add_subcommand("extremal", "exact ex(n, H)");
    ex->add_option("--n", ex_n)->required();
    ex->add_option("--pattern", ex_pattern)->required();
    ex->add_option("-o,--out", ex_out);

    // --- zbound
    std::string z_pattern, z_out;
    int z_m = 0, z_n = 0;
    auto* zb = app.add_subcommand("zbound", "exact z(m, n, H)");
    zb->add_option("--m", z_m)->required();
    zb->add_option("--n", z_n)->required();
    zb->add_option("--pattern", z_pattern)->required();
    zb->add_option("-o,--out", z_out);

    // --- table
    std::string tb_task, tb_pattern, tb_out, tb_gq;
    int tb_nmax = 0, tb_mmax = 0;
    auto* tb = app.add_subcommand("table", "batch CSV tables");
    tb->add_option("task", tb_task, "extremal|zbound|density")->required();
    tb->add_option("--pattern", tb_pattern);
    tb->add_option("--nmax", tb_nmax);
    tb->add_option("--mmax", tb_mmax);
    tb->add_option("--gq", tb_gq, "comma-separated prime powers for density");
    tb->add_option("-o,--out", tb_out);

    // --- gq
    int gq_q = 2;
    std::string gq_out;
    auto* gq = app.add_subcommand("gq", "symplectic generalized quadrangle incidence graph");
    gq->add_option("--q", gq_q)->required();
    gq->add_option("-o,--out", gq_out);

    // accepted for interface compatibility; the library runs single-threaded
    int workers = 1;
    bool deterministic = false;
    app.add_option("--workers", workers);
    app.add_flag("--seedless,--deterministic", deterministic);
    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return run_gen(gen_spec, gen_sub, gen_list, gen_format, gen_out);

        if (*subc) {
            Graph g = load_graph(sub_in);
            std::ofstream file;
            std::ostream& out = open_out(file, sub_out);
            emit_graph(subdivide_graph(g), sub_format, out);
            return 0;
        }

        if (*cs) return run_color_stats(cs_host, cs_pattern);

        if (*find) return run_find(find_host, find_pattern, find_sub, find_mode, find_budget,
                                   find_out, find_trace);

        if (*ver) return run_verify(ver_witness, ver_host);

        if (*ex) {
            auto rec = exact_ex(ex_n, FamilySpec::parse(ex_pattern).build(), cap_override(10));
            std::ofstream file;
            std::ostream& out = open_out(file, ex_out);
            out << "n,pattern,value,runtime_ms,witness_graph6\n";
            csv_record(out, rec, ex_pattern);
            return 0;
        }

        if (*zb) {
            auto rec = exact_z(z_m, z_n, FamilySpec::parse(z_pattern).build(), cap_override(14));
            std::ofstream file;
            std::ostream& out = open_out(file, z_out);
            out << "n,m,pattern,value,runtime_ms,witness_graph6\n";
            csv_record(out, rec, z_pattern);
            return 0;
        }

        if (*tb) {
            std::ofstream file;
            std::ostream& out = open_out(file, tb_out);
            if (tb_task == "extremal") {
                out << "n,pattern,value,runtime_ms,witness_graph6\n";
                Graph pattern = FamilySpec::parse(tb_pattern).build();
                for (int n = pattern.vertex_count(); n <= tb_nmax; ++n)
                    csv_record(out, exact_ex(n, pattern, cap_override(10)), tb_pattern);
            } else if (tb_task == "zbound") {
                out << "n,m,pattern,value,runtime_ms,witness_graph6\n";
                Graph pattern = FamilySpec::parse(tb_pattern).build();
                for (int n = 1; n <= tb_nmax; ++n)
                    for (int m = 1; m <= std::min(n, tb_mmax); ++m)
                        csv_record(out, exact_z(m, n, pattern, cap_override(14)), tb_pattern);
            } else if (tb_task == "density") {
                out << "n,e,ratio\n";
                std::vector<Graph> graphs;
                std::string item;
                std::stringstream ss(tb_gq);
                while (std::getline(ss, item, ','))
                    graphs.push_back(gq_incidence_graph(std::stoi(item)).incidence);
                for (const auto& row : density_table(graphs))
                    out << row.n << "," << row.e << "," << row.ratio << "\n";
            } else {
                std::cerr << "unknown table task " << tb_task << "\n";
                return 2;
            }
            return 0;
        }

        if (*gq) {
            auto construction = gq_incidence_graph(gq_q);
            std::ofstream file;
            std::ostream& out = open_out(file, gq_out);
            out << write_graph6(construction.incidence) << "\n";
            std::cerr << "q=" << construction.q << " points=" << construction.points
                      << " lines=" << construction.lines
                      << " edges=" << construction.incidence.edge_count() << " girth=8\n";
            return 0;
        }
    } catch (const resource_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
