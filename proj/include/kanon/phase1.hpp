#ifndef KANON_PHASE1_HPP
#define KANON_PHASE1_HPP

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "kanon/block_sequence.hpp"

namespace kanon {

/// cost(i, t): total increments needed to raise the t highest degrees of the
/// prefix b_0..b_i to value i+1. kInfeasible when fewer than t degrees exist.
class CostTable {
public:
    static constexpr Count kInfeasible = std::numeric_limits<Count>::max();

    CostTable(const BlockSequence& b, int k) : CostTable(b, 2 * k, b.delta() + 1) {}
    CostTable(const BlockSequence& b, int width, int levels);

    Count at(int i, int t) const { return cost_[static_cast<std::size_t>(i) * width_ + t]; }
    int width() const { return width_; }

private:
    int width_ = 0;
    std::vector<Count> cost_;
};

/// T[i][t][c] is true iff the prefix b_0..b_i minus its t highest degrees is
/// k-anonymizable (within degrees <= i) at cost exactly c. The cost axis is a
/// bitset, so one table answers membership for every c <= s_max.
///
/// Instances with at most kExactStateLimit vertices run in an exact regime:
/// the in-flight state ranges over 0..n and the level axis extends to the
/// degree cap, so every dominating k-anonymous target is reachable and the
/// per-level enumeration is exhaustive. Larger instances use the classic
/// 0..2k-1 window (complete at the minimum cost level, where no solution
/// moves 2k degrees past one boundary) with new blocks above delta folded in
/// as a single closing landing.
class DpTable {
public:
    static constexpr Count kExactStateLimit = 64;

    /// exact_limit caps the vertex count up to which the exact regime is
    /// used; 0 forces the classic window (mainly for cross-checking).
    static DpTable build(const BlockSequence& b, int k, Count s_max,
                         Count exact_limit = kExactStateLimit);

    bool feasible(int i, int t, Count c) const;
    /// Smallest c <= s_max with T[delta][0][c] true.
    std::optional<Count> min_total_cost() const;
    /// Smallest feasible c in [from, s_max].
    std::optional<Count> next_total_cost(Count from) const;

    int k() const { return k_; }
    Count s_max() const { return s_max_; }
    /// Highest target degree considered: min(n-1, 2*delta^2).
    Count degree_cap() const { return cap_; }
    bool exact() const { return exact_; }
    int state_width() const { return width_; }
    int levels() const { return len_; }
    const BlockSequence& source() const { return source_; }
    const CostTable& costs() const { return costs_; }

private:
    DpTable(const BlockSequence& b, int k, Count s_max, bool exact);

    const std::uint64_t* row(int i, int t) const;
    std::uint64_t* row(int i, int t);

    int k_;
    bool exact_;
    int width_; // in-flight states per level
    int len_;   // block levels in the table
    Count s_max_;
    Count cap_ = 0;
    std::size_t words_;
    BlockSequence source_;
    CostTable costs_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> answer_; // feasible total costs, above-delta landings folded in
};

/// First feasible k-anonymization cost of b, or nullopt if none exists within
/// budget. The table is grown geometrically, so memory tracks the answer.
std::optional<Count> min_cost(const BlockSequence& b, int k, Count budget);

struct EnumerationStats {
    Count emitted = 0;
    bool truncated = false; // stopped by limit or by the sink; more paths may remain
};

/// Streams every solution of cost exactly s in deterministic backtracking
/// order. The sink returns false to stop early. limit < 0 means unlimited.
EnumerationStats
enumerate_solutions(const DpTable& table, Count s, Count limit,
                    const std::function<bool(const AnonymizationSolution&)>& sink);

struct Substitution {
    int start = 0;
    std::vector<Count> before;
    std::vector<Count> after;
    Count cost = 0;
};

struct ReductionResult {
    BlockSequence reduced;
    std::vector<Substitution> log;

    /// Total increments the substitutions applied; reduced dominates the
    /// input by exactly this norm gap.
    Count substitution_cost() const;
};

/// Collapses anchor/valley/run patterns to one canonical minimum
/// anonymization of the enclosed subsequence. Applied left to right,
/// non-overlapping, iterated to a fixpoint. Identity when nothing matches.
ReductionResult apply_reduction_rule(const BlockSequence& b, int k);

} // namespace kanon

#endif
