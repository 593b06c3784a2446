#ifndef KANON_REALIZABILITY_HPP
#define KANON_REALIZABILITY_HPP

#include <functional>
#include <optional>

#include "kanon/block_sequence.hpp"
#include "kanon/graph.hpp"

namespace kanon {

struct EgVerdict {
    bool realizable = false;
    bool parity_ok = false;
    /// Prefix length r at which inequality (degree-sum vs capacity) first
    /// failed; unset when the sequence passed or only parity failed.
    std::optional<Count> first_failing_r;
};

/// Graphicality of a degree multiset: even sum plus the prefix inequality,
/// evaluated once per block (Tripathi-Vijay).
EgVerdict erdos_gallai_test(const BlockSequence& d);
EgVerdict erdos_gallai_test(const DegreeSequence& d);

/// Havel-Hakimi construction; vertex i receives degree d[i]. Succeeds exactly
/// when the sequence is graphical.
std::optional<Graph> realize_sequence(const DegreeSequence& d);

/// Immutable per-graph data shared by every solution test.
struct GraphBlocks {
    explicit GraphBlocks(const Graph& graph);

    const Graph& g;
    BlockSequence blocks;
    std::vector<std::vector<Vertex>> members; // vertex ids per degree
};

/// Necessary condition for realizing sol.target in the graph: the plain test
/// on the difference sequence, strengthened by edge-capacity bounds around
/// the vertex sets that every degree-vertex mapping must raise (the fully
/// drained blocks). Sound over all mappings, including jumps.
EgVerdict advanced_erdos_gallai_test(const GraphBlocks& ctx, const AnonymizationSolution& sol);

struct WasteOutcome {
    AnonymizationSolution solution;
    Count waste = 0;
};

/// Over-raises sol.target (preserving k-anonymity and the degree cap) until
/// the advanced test accepts the result. Tries one-step shifts between
/// adjacent large blocks first, then a bounded search over waste
/// distributions. nullopt when the budget (default 4*delta) is exhausted.
std::optional<WasteOutcome> waste_to_realizable(const GraphBlocks& ctx,
                                                const AnonymizationSolution& sol, int k,
                                                Count budget = -1);

/// Streams waste candidates: the large-block fast path first (each pair by
/// increasing waste), then remaining distributions by increasing waste. The
/// sink returns false to stop. Used by the solver to try realizing
/// successively wasted upper-bound targets.
void enumerate_waste_candidates(const GraphBlocks& ctx, const AnonymizationSolution& sol, int k,
                                Count budget, const std::function<bool(const WasteOutcome&)>& sink);

/// Largest degree a minimum solution may create: min(n-1, 2*delta^2).
Count target_degree_cap(const Graph& g);

} // namespace kanon

#endif
