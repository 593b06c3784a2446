#ifndef KANON_PHASE2_HPP
#define KANON_PHASE2_HPP

#include <functional>
#include <optional>
#include <string>

#include "kanon/block_sequence.hpp"
#include "kanon/deadline.hpp"
#include "kanon/graph.hpp"
#include "kanon/realizability.hpp"
#include "kanon/rng.hpp"

namespace kanon {

/// How a target block sequence is read back as per-vertex raises. The natural
/// interpretation stops every rising degree at the next non-empty block; a
/// jump sends `extra` of the degrees passing into block `block` over it
/// instead of stopping there.
struct JumpConfiguration {
    std::vector<std::pair<int, Count>> jumps; // (block, extra carried past), sorted

    bool trivial() const { return jumps.empty(); }
};

/// Per-block headroom for jumps: how many additional degrees may pass over
/// each block beyond the natural interpretation's forced minimum.
std::vector<Count> jump_slack(const BlockSequence& target, const BlockSequence& source);

/// Streams configurations with 0, 1, 2, ... jump blocks, the jump-free one
/// first; per chosen block the extra count ranges over 1..min(slack, cap).
/// The sink returns false to stop. Returns false if the sink stopped early.
bool enumerate_jump_configs(const BlockSequence& source, const AnonymizationSolution& sol,
                            int max_jump_blocks, Count per_block_cap,
                            const std::function<bool(const JumpConfiguration&)>& sink);

/// Move multiset of the given interpretation. Among degrees carried past a
/// block, the highest sources keep rising; the lowest stop.
std::vector<DegreeMove> moves_for_jumps(const BlockSequence& target, const BlockSequence& source,
                                        const JumpConfiguration& jumps);

struct DegreeVertexMapping {
    std::vector<Count> target_degree; // per vertex, >= its degree
};

struct DemandFunction {
    std::vector<Count> demand; // per vertex
    Count total = 0;

    std::vector<Vertex> support() const;
};

/// Raised vertices are drawn uniformly without replacement from each source
/// block; deterministic given the rng state.
DegreeVertexMapping sample_mapping(const GraphBlocks& ctx, const std::vector<DegreeMove>& moves,
                                   Rng& rng);

DemandFunction demand_function(const Graph& g, const DegreeVertexMapping& mapping);

/// The local exchange heuristic: greedy random insertion between
/// positive-demand vertices, with edge-exchange repair moves when stuck.
/// work_budget caps the number of insertability probes (deterministic,
/// unlike a wall clock); -1 means unlimited. Budgeted runs that would grind
/// through long exchange scans fail fast instead.
std::optional<EdgeInsertionSet> local_exchange(const Graph& g, const DemandFunction& demand,
                                               Rng rng, const Deadline& deadline = {},
                                               Count work_budget = -1);

struct RealizeConfig {
    int mappings = 100;     // degree-vertex mappings per jump configuration
    int trials = 25;        // local-exchange runs per mapping
    int max_jump_blocks = 10;
    Count jump_count_cap = 5;
    Count config_cap = -1;  // jump configurations to try; -1: all
    Count work_budget = -1; // per local-exchange run; -1: unlimited
};

enum class RealizeStatus { found, exhausted, timed_out };

struct RealizeResult {
    RealizeStatus status = RealizeStatus::exhausted;
    std::optional<EdgeInsertionSet> edges;
    Count attempts = 0;             // local-exchange runs
    bool needed_jumps = false;      // found via a non-trivial configuration
};

/// Tries cfg.mappings x cfg.trials realizations per jump configuration and
/// returns the first success. Deterministic given the seed.
RealizeResult realize(const GraphBlocks& ctx, const AnonymizationSolution& sol,
                      const RealizeConfig& cfg, std::uint64_t seed,
                      const Deadline& deadline = {});

struct InsertionReport {
    bool valid = false;     // simple, duplicate-free, disjoint from the graph
    bool anonymous = false; // g+s is k-anonymous
    Count edges_added = 0;
    BlockSequence result_blocks; // of g+s when valid, of g otherwise
    std::vector<std::string> violations;

    bool ok() const { return valid && anonymous; }
};

InsertionReport verify_insertion(const Graph& g, const EdgeInsertionSet& s, int k);

} // namespace kanon

#endif
