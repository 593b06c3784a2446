#ifndef KANON_BLOCK_SEQUENCE_HPP
#define KANON_BLOCK_SEQUENCE_HPP

#include <cstdint>
#include <vector>

namespace kanon {

using Count = std::int64_t;

// Degree multiset, stored sorted ascending.
using DegreeSequence = std::vector<Count>;

/// Histogram form of a degree sequence: counts[d] = number of vertices of
/// degree d. Canonical form has no trailing zero entries, so size() is
/// delta+1 for a non-empty sequence.
class BlockSequence {
public:
    BlockSequence() = default;
    explicit BlockSequence(std::vector<Count> counts);

    static BlockSequence from_degrees(const DegreeSequence& degrees);

    const std::vector<Count>& counts() const { return counts_; }
    Count at(int degree) const {
        return degree >= 0 && degree < static_cast<int>(counts_.size()) ? counts_[degree] : 0;
    }

    /// Largest degree with a non-zero count; -1 for an empty sequence.
    int delta() const { return static_cast<int>(counts_.size()) - 1; }
    /// Number of represented vertices.
    Count vertex_count() const;
    /// Sum of all represented degrees (the norm from the difference algebra).
    Count norm() const;

    bool empty() const { return counts_.empty(); }

    DegreeSequence to_degrees() const;

    bool operator==(const BlockSequence& other) const { return counts_ == other.counts_; }

private:
    std::vector<Count> counts_;
};

/// Every count is zero or at least k.
bool is_k_anonymous(const BlockSequence& b, int k);

/// True iff the ascending-sorted degree sequences satisfy d2_i >= d1_i
/// positionwise. Throws std::invalid_argument on mismatched vertex counts.
bool dominates(const BlockSequence& b2, const BlockSequence& b1);

/// Block sequence of the positionwise differences of the ascending-sorted
/// degree sequences. Requires dominates(b2, b1).
using DifferenceSequence = BlockSequence;
DifferenceSequence difference(const BlockSequence& b2, const BlockSequence& b1);

/// A degree raise shared by `count` vertices: `count` degrees move from value
/// `from` to value `to`, from < to.
struct DegreeMove {
    int from = 0;
    int to = 0;
    Count count = 0;

    bool operator==(const DegreeMove&) const = default;
};

/// Positionwise (jump-free) move decomposition of target over source.
std::vector<DegreeMove> natural_moves(const BlockSequence& target, const BlockSequence& source);

/// One k-anonymous outcome of Phase 1: the target sequence, its increment
/// cost, and the move multiset the DP path implies.
struct AnonymizationSolution {
    BlockSequence target;
    Count cost = 0;
    std::vector<DegreeMove> moves;
};

/// Number of degrees raised past the boundary between degree i and i+1,
/// i.e. x[i] = |{d > i in target}| - |{d > i in source}|. Identical for every
/// move decomposition of the pair. Index range [0, len), len = max delta + 1.
std::vector<Count> boundary_crossings(const BlockSequence& target, const BlockSequence& source);

} // namespace kanon

#endif
