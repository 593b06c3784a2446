#ifndef KANON_SOLVER_HPP
#define KANON_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "kanon/block_sequence.hpp"
#include "kanon/graph.hpp"

namespace kanon {

struct SolverConfig {
    std::vector<int> k_list{2, 3, 4, 5, 7, 10, 15, 20, 30, 50, 100, 150, 200};
    double time_limit_s = 3600.0; // per k value
    std::uint64_t seed = 1;
    int mappings = 100;
    int trials = 25;
    int max_jump_blocks = 10;
    Count jump_count_cap = 5;
    // The reduction rule collapses equivalent-looking solution families; the
    // graph-aware test can tell them apart, so collapsing may hide the only
    // realizable sibling. Off by default; when on, the solver still reports
    // sound bounds but stops raising the lower bound past the first
    // enumerated cost level.
    bool reduction = false;
    bool advanced_eg = true;
    Count waste_budget = -1;      // increments; -1 means 4*delta
    Count enumeration_limit = 10000;
    Count cost_budget = -1;       // increments; -1 picks a size-based default
    Count dump_solutions = 0;     // keep the first N enumerated solutions for debugging
    int waste_candidates = 8;     // failed solutions to seed the wasting search from
    int waste_attempts = 32;      // wasted targets to try realizing per seed solution
};

/// Lower/upper bounds for one (graph, k) instance. Costs are degree
/// increments, edge counts their halves; the report carries both.
struct BoundsReport {
    std::string graph_id;
    Count n = 0;
    Count m = 0;
    int delta = 0;
    int k = 0;

    std::optional<Count> phase1_cost;      // minimum k-DSA cost (increments)
    Count lower_bound_cost = 0;
    Count lower_bound_edges = 0;
    std::optional<Count> upper_bound_cost;
    std::optional<Count> upper_bound_edges;

    bool optimal = false;
    bool certified = true;        // lower bound backed by exhaustive enumeration
    bool phase1_complete = false; // the lower-bound climb reached a conclusion
    bool realization_failed = false;
    bool timed_out = false;
    bool infeasible = false;      // k exceeds the vertex count

    Count solutions_tested = 0;
    std::uint64_t seed = 0;
    std::int64_t phase1_time_ms = 0;
    std::int64_t phase2_time_ms = 0;

    std::optional<EdgeInsertionSet> edges; // witness for the upper bound
    std::vector<AnonymizationSolution> dumped_solutions;
};

BoundsReport solve(const Graph& g, int k, const SolverConfig& cfg,
                   const std::string& graph_id = "graph");

/// One solve per listed k (values above n are reported infeasible without
/// running). Reports are independent of the list order.
std::vector<BoundsReport> sweep(const Graph& g, const SolverConfig& cfg,
                                const std::string& graph_id = "graph");

std::string report_to_json(const BoundsReport& report);
std::string reports_to_json(const std::vector<BoundsReport>& reports);
std::string reports_to_csv(const std::vector<BoundsReport>& reports);
std::string solutions_to_json(const std::vector<AnonymizationSolution>& solutions);

} // namespace kanon

#endif
