#include "kanon/block_sequence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kanon {

namespace {

void trim(std::vector<Count>& counts) {
    while (!counts.empty() && counts.back() == 0)
        counts.pop_back();
}

} // namespace

BlockSequence::BlockSequence(std::vector<Count> counts) : counts_(std::move(counts)) {
    for (Count c : counts_)
        if (c < 0)
            throw std::invalid_argument("negative block count");
    trim(counts_);
}

BlockSequence BlockSequence::from_degrees(const DegreeSequence& degrees) {
    std::vector<Count> counts;
    for (Count d : degrees) {
        if (d < 0)
            throw std::invalid_argument("negative degree");
        if (d >= static_cast<Count>(counts.size()))
            counts.resize(d + 1, 0);
        ++counts[d];
    }
    return BlockSequence(std::move(counts));
}

Count BlockSequence::vertex_count() const {
    return std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

Count BlockSequence::norm() const {
    Count total = 0;
    for (std::size_t d = 0; d < counts_.size(); ++d)
        total += static_cast<Count>(d) * counts_[d];
    return total;
}

DegreeSequence BlockSequence::to_degrees() const {
    DegreeSequence degrees;
    degrees.reserve(vertex_count());
    for (std::size_t d = 0; d < counts_.size(); ++d)
        degrees.insert(degrees.end(), counts_[d], static_cast<Count>(d));
    return degrees;
}

bool is_k_anonymous(const BlockSequence& b, int k) {
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    for (Count c : b.counts())
        if (c != 0 && c < k)
            return false;
    return true;
}

bool dominates(const BlockSequence& b2, const BlockSequence& b1) {
    if (b2.vertex_count() != b1.vertex_count())
        throw std::invalid_argument("dominance requires equal vertex counts");
    // Positionwise d2_i >= d1_i on sorted sequences is equivalent to: for
    // every degree d, b2 has at most as many values <= d as b1.
    int len = std::max(b2.delta(), b1.delta()) + 1;
    Count cum2 = 0, cum1 = 0;
    for (int d = 0; d < len; ++d) {
        cum2 += b2.at(d);
        cum1 += b1.at(d);
        if (cum2 > cum1)
            return false;
    }
    return true;
}

DifferenceSequence difference(const BlockSequence& b2, const BlockSequence& b1) {
    if (!dominates(b2, b1))
        throw std::invalid_argument("difference requires b2 to dominate b1");
    std::vector<Count> diff_counts;
    auto bump = [&diff_counts](Count value, Count times) {
        if (value >= static_cast<Count>(diff_counts.size()))
            diff_counts.resize(value + 1, 0);
        diff_counts[value] += times;
    };
    // Walk both sorted sequences as runs of equal values.
    int d1 = 0, d2 = 0;
    Count left1 = b1.at(0), left2 = b2.at(0);
    Count n = b1.vertex_count();
    Count emitted = 0;
    while (emitted < n) {
        while (left1 == 0)
            left1 = b1.at(++d1);
        while (left2 == 0)
            left2 = b2.at(++d2);
        Count run = std::min(left1, left2);
        bump(d2 - d1, run);
        left1 -= run;
        left2 -= run;
        emitted += run;
    }
    return BlockSequence(std::move(diff_counts));
}

std::vector<DegreeMove> natural_moves(const BlockSequence& target, const BlockSequence& source) {
    if (!dominates(target, source))
        throw std::invalid_argument("natural_moves requires target to dominate source");
    std::vector<DegreeMove> moves;
    int d1 = 0, d2 = 0;
    Count left1 = source.at(0), left2 = target.at(0);
    Count n = source.vertex_count();
    Count emitted = 0;
    while (emitted < n) {
        while (left1 == 0)
            left1 = source.at(++d1);
        while (left2 == 0)
            left2 = target.at(++d2);
        Count run = std::min(left1, left2);
        if (d2 != d1)
            moves.push_back({d1, d2, run});
        left1 -= run;
        left2 -= run;
        emitted += run;
    }
    return moves;
}

std::vector<Count> boundary_crossings(const BlockSequence& target, const BlockSequence& source) {
    int len = std::max(target.delta(), source.delta()) + 1;
    std::vector<Count> x(std::max(len, 0), 0);
    // x[i] = suffix_count(target, i+1) - suffix_count(source, i+1), built
    // from the top down.
    Count suffix_target = 0, suffix_source = 0;
    for (int i = len - 1; i >= 0; --i) {
        suffix_target += target.at(i + 1);
        suffix_source += source.at(i + 1);
        x[i] = suffix_target - suffix_source;
    }
    return x;
}

} // namespace kanon
