#ifndef KANON_ORACLE_HPP
#define KANON_ORACLE_HPP

#include <optional>

#include "kanon/block_sequence.hpp"
#include "kanon/graph.hpp"

namespace kanon {
namespace oracle {

/// Exhaustive solvers for desk-size instances. They share no algorithmic
/// logic with the production pipeline beyond the graph-core types, so tests
/// can use them as independent ground truth. They are shipped (and reachable
/// through the hidden `oracle` CLI subcommand) so reported values can be
/// reproduced.

/// Minimum k-insertion set by iterative deepening over complement-edge
/// subsets; nullopt when nothing within edge_cap works. Throws when the graph
/// exceeds n_limit vertices.
std::optional<EdgeInsertionSet> brute_force_min_insertion(const Graph& g, int k, Count edge_cap,
                                                          Count n_limit = 10);

/// Minimum total increments to make b k-anonymous (the pure number problem),
/// by exhaustive search over bounded dominating block sequences. nullopt when
/// no k-anonymous target exists (k larger than the vertex count). Throws
/// beyond the stated instance limits.
std::optional<Count> brute_force_kdsa(const BlockSequence& b, int k, Count n_limit = 12,
                                      int delta_limit = 6);

/// Exhaustive search over all graphs on n labeled vertices. Throws for n > 8.
bool brute_force_realizable(const DegreeSequence& d);

} // namespace oracle
} // namespace kanon

#endif
