#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kanon/generator.hpp"
#include "kanon/graph_io.hpp"
#include "kanon/oracle.hpp"
#include "kanon/phase2.hpp"
#include "kanon/solver.hpp"

namespace {

using namespace kanon;

struct IoOptions {
    std::string format = "edgelist";
    int index_base = 0;
    std::int64_t declared_n = -1;
};

void add_io_options(CLI::App* cmd, IoOptions& io) {
    cmd->add_option("--format", io.format, "Graph file format")
        ->check(CLI::IsMember({"metis", "edgelist"}))
        ->capture_default_str();
    cmd->add_option("--index-base", io.index_base, "Vertex id base of edge-list files")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();
    cmd->add_option("--num-vertices", io.declared_n,
                    "Declared vertex count for edge-list files (covers isolated tail vertices)");
}

Graph load(const std::string& path, const IoOptions& io, bool warn = true) {
    GraphFormat format = *parse_format(io.format);
    std::optional<Count> declared =
        io.declared_n >= 0 ? std::optional<Count>(io.declared_n) : std::nullopt;
    LoadResult loaded = load_graph(path, format, io.index_base, declared);
    if (warn && (loaded.dropped_self_loops > 0 || loaded.dropped_duplicates > 0))
        std::cerr << "warning: dropped " << loaded.dropped_self_loops << " self-loops and "
                  << loaded.dropped_duplicates << " duplicate edges from " << path << '\n';
    return std::move(loaded.graph);
}

std::string graph_stem(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

std::vector<int> parse_k_list(const std::string& csv) {
    std::vector<int> ks;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            ks.push_back(std::stoi(item));
    return ks;
}

int run_anonymize(const std::string& path, const IoOptions& io, SolverConfig cfg,
                  const std::vector<int>& k_values, const std::string& k_csv,
                  const std::string& out_format, const std::string& output_path,
                  const std::string& emit_edges, const std::string& dump_solutions) {
    std::vector<int> ks = k_values;
    for (int k : parse_k_list(k_csv))
        ks.push_back(k);
    if (!ks.empty())
        cfg.k_list = ks;
    if (!dump_solutions.empty() && cfg.dump_solutions == 0)
        cfg.dump_solutions = 1000;

    Graph g = load(path, io);
    std::vector<BoundsReport> reports = sweep(g, cfg, graph_stem(path));

    std::string rendered =
        out_format == "csv" ? reports_to_csv(reports) : reports_to_json(reports);
    if (output_path.empty())
        std::cout << rendered << '\n';
    else
        write_text(output_path, rendered);

    if (!emit_edges.empty()) {
        for (const BoundsReport& report : reports) {
            if (!report.edges)
                continue;
            std::string target = cfg.k_list.size() == 1
                                     ? emit_edges
                                     : emit_edges + ".k" + std::to_string(report.k);
            std::ofstream out(target);
            if (!out)
                throw std::runtime_error("cannot open " + target + " for writing");
            write_edge_set(out, *report.edges, io.index_base);
        }
    }
    if (!dump_solutions.empty()) {
        std::vector<AnonymizationSolution> all;
        for (const BoundsReport& report : reports)
            all.insert(all.end(), report.dumped_solutions.begin(),
                       report.dumped_solutions.end());
        write_text(dump_solutions, solutions_to_json(all));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-degree anonymity by minimum edge insertion: exact degree-sequence "
                 "anonymization with realizability filtering (lower bounds) and randomized "
                 "realization (upper bounds)"};
    app.require_subcommand(1);

    // anonymize
    auto* anon = app.add_subcommand("anonymize", "Solve one graph for one or more k values");
    std::string graph_path;
    IoOptions anon_io;
    SolverConfig cfg;
    std::vector<int> k_values;
    std::string k_csv, out_format = "json", output_path, emit_edges, dump_solutions;
    bool reduction = false, no_reduction = false, no_advanced_eg = false;
    anon->add_option("graph", graph_path, "Input graph file")->required();
    add_io_options(anon, anon_io);
    anon->add_option("--k", k_values, "k value (repeatable)");
    anon->add_option("--k-list", k_csv, "Comma-separated k values");
    anon->add_option("--time-limit", cfg.time_limit_s, "Seconds per k value")
        ->capture_default_str();
    anon->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    anon->add_option("--mappings", cfg.mappings, "Degree-vertex mappings per jump configuration")
        ->capture_default_str();
    anon->add_option("--trials", cfg.trials, "Local-exchange runs per mapping")
        ->capture_default_str();
    anon->add_option("--max-jump-blocks", cfg.max_jump_blocks, "Jump blocks to combine")
        ->capture_default_str();
    anon->add_flag("--reduction", reduction,
                   "Collapse valley patterns before the search (faster on huge instances; "
                   "bounds may be weaker because collapsed siblings are not searched)");
    anon->add_flag("--no-reduction", no_reduction,
                   "Keep the full solution space (the default)");
    anon->add_flag("--no-advanced-eg", no_advanced_eg,
                   "Use only the plain Erdos-Gallai test on difference sequences");
    anon->add_option("--waste-budget", cfg.waste_budget,
                     "Increments the wasting search may add (-1: 4*delta)");
    anon->add_option("--enumeration-limit", cfg.enumeration_limit,
                     "Solutions enumerated per cost level before the bound degrades to "
                     "best-effort")
        ->capture_default_str();
    anon->add_option("--cost-budget", cfg.cost_budget,
                     "Increment budget for the lower-bound climb (-1: size-based)");
    anon->add_option("--out", out_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    anon->add_option("--output", output_path, "Write the report here instead of stdout");
    anon->add_option("--emit-edges", emit_edges,
                     "Write the winning insertion set as an edge list (suffix .k<k> when "
                     "several k values are solved)");
    anon->add_option("--dump-solutions", dump_solutions,
                     "Write enumerated Phase 1 solutions as JSON (debugging)");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a Barabasi-Albert random graph");
    std::string gen_path, gen_format = "metis";
    std::int64_t gen_steps = 400;
    int gen_m0 = 3;
    std::uint64_t gen_seed = 1;
    gen->add_option("output", gen_path, "Output graph file")->required();
    gen->add_option("--steps", gen_steps, "Attachment steps")->capture_default_str();
    gen->add_option("--m0", gen_m0, "Edges per new vertex (seed clique has m0+1 vertices)")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen->add_option("--format", gen_format, "Output format")
        ->check(CLI::IsMember({"metis", "edgelist"}))
        ->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "Check an insertion set against a graph and k");
    std::string ver_graph, ver_edges;
    IoOptions ver_io;
    int ver_k = 2;
    ver->add_option("graph", ver_graph, "Input graph file")->required();
    ver->add_option("edges", ver_edges, "Edge list of insertions")->required();
    ver->add_option("--k", ver_k, "Anonymity level")->required();
    add_io_options(ver, ver_io);

    // oracle: brute-force reference solvers for reproducing reported values
    auto* orc = app.add_subcommand("oracle", "Brute-force reference solvers (small inputs)");
    orc->group(""); // hidden from help
    orc->require_subcommand(1);
    auto* orc_min = orc->add_subcommand("min-insertion", "Minimum k-insertion set size");
    std::string orc_graph;
    IoOptions orc_io;
    int orc_k = 2;
    std::int64_t orc_cap = 16;
    orc_min->add_option("graph", orc_graph)->required();
    orc_min->add_option("--k", orc_k)->required();
    orc_min->add_option("--edge-cap", orc_cap)->capture_default_str();
    add_io_options(orc_min, orc_io);
    auto* orc_kdsa = orc->add_subcommand("kdsa", "Minimum increments to k-anonymize a block "
                                                 "sequence");
    std::string orc_blocks;
    int orc_kdsa_k = 2;
    orc_kdsa->add_option("--blocks", orc_blocks, "Comma-separated block sizes b0,b1,...")
        ->required();
    orc_kdsa->add_option("--k", orc_kdsa_k)->required();
    auto* orc_real = orc->add_subcommand("realizable", "Graphicality of a degree sequence");
    std::string orc_degrees;
    orc_real->add_option("--degrees", orc_degrees, "Comma-separated degrees")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (anon->parsed()) {
            cfg.reduction = reduction && !no_reduction;
            cfg.advanced_eg = !no_advanced_eg;
            return run_anonymize(graph_path, anon_io, cfg, k_values, k_csv, out_format,
                                 output_path, emit_edges, dump_solutions);
        }
        if (gen->parsed()) {
            Graph g = barabasi_albert(gen_steps, gen_m0, gen_seed);
            write_graph(gen_path, g, *parse_format(gen_format));
            std::cerr << "wrote n=" << g.vertex_count() << " m=" << g.edge_count()
                      << " delta=" << g.max_degree() << " to " << gen_path << '\n';
            return 0;
        }
        if (ver->parsed()) {
            Graph g = load(ver_graph, ver_io);
            EdgeInsertionSet s = load_edge_set(ver_edges, ver_io.index_base);
            InsertionReport report = verify_insertion(g, s, ver_k);
            nlohmann::ordered_json j;
            j["valid"] = report.valid;
            j["k_anonymous"] = report.anonymous;
            j["edges_added"] = report.edges_added;
            j["block_sequence"] = report.result_blocks.counts();
            j["violations"] = report.violations;
            std::cout << j.dump(2) << '\n';
            return report.ok() ? 0 : 1;
        }
        if (orc_min->parsed()) {
            Graph g = load(orc_graph, orc_io);
            auto best = oracle::brute_force_min_insertion(g, orc_k, orc_cap);
            if (!best) {
                std::cout << "no k-insertion set within the edge cap\n";
                return 1;
            }
            std::cout << best->size() << " edges\n";
            std::ostringstream edges;
            write_edge_set(edges, *best, orc_io.index_base);
            std::cout << edges.str();
            return 0;
        }
        if (orc_kdsa->parsed()) {
            std::vector<Count> counts;
            for (int v : parse_k_list(orc_blocks))
                counts.push_back(v);
            auto best = oracle::brute_force_kdsa(BlockSequence(counts), orc_kdsa_k);
            if (!best) {
                std::cout << "infeasible\n";
                return 1;
            }
            std::cout << *best << " increments\n";
            return 0;
        }
        if (orc_real->parsed()) {
            DegreeSequence d;
            for (int v : parse_k_list(orc_degrees))
                d.push_back(v);
            bool ok = oracle::brute_force_realizable(d);
            std::cout << (ok ? "realizable" : "not realizable") << '\n';
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
