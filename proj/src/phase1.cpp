#include "kanon/phase1.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace kanon {

namespace {

constexpr Count kNoCost = CostTable::kInfeasible;

std::size_t word_count(Count s_max) { return static_cast<std::size_t>(s_max) / 64 + 1; }

// dst |= src << shift, over bit positions [0, bits).
void shift_or(std::uint64_t* dst, const std::uint64_t* src, Count shift, std::size_t words) {
    std::size_t word_shift = static_cast<std::size_t>(shift) / 64;
    unsigned bit_shift = static_cast<unsigned>(shift % 64);
    if (word_shift >= words)
        return;
    if (bit_shift == 0) {
        for (std::size_t w = words; w-- > word_shift;)
            dst[w] |= src[w - word_shift];
    } else {
        for (std::size_t w = words; w-- > word_shift;) {
            std::uint64_t value = src[w - word_shift] << bit_shift;
            if (w > word_shift)
                value |= src[w - word_shift - 1] >> (64 - bit_shift);
            dst[w] |= value;
        }
    }
}

} // namespace

CostTable::CostTable(const BlockSequence& b, int width, int levels) : width_(width) {
    int len = std::max(levels, 1);
    cost_.assign(static_cast<std::size_t>(len) * width_, kNoCost);
    for (int i = 0; i < len; ++i) {
        // Walk the t highest degrees <= i, cheapest (value i) first.
        Count total = 0;
        int d = i;
        Count used_in_block = 0;
        cost_[static_cast<std::size_t>(i) * width_] = 0;
        for (int t = 1; t < width_; ++t) {
            while (d >= 0 && used_in_block == b.at(d)) {
                --d;
                used_in_block = 0;
            }
            if (d < 0)
                break;
            ++used_in_block;
            total += i + 1 - d;
            cost_[static_cast<std::size_t>(i) * width_ + t] = total;
        }
    }
}

namespace {

// Risen degrees may form new blocks above delta, up to the simple-graph
// ceiling and the quadratic bound on degrees a minimum solution creates.
Count lemma_degree_cap(const BlockSequence& b) {
    Count delta = b.delta();
    return std::max<Count>(std::min(b.vertex_count() - 1, 2 * delta * delta), delta);
}

} // namespace

DpTable::DpTable(const BlockSequence& b, int k, Count s_max, bool exact)
    : k_(k), exact_(exact), width_(exact_ ? static_cast<int>(b.vertex_count()) + 1 : 2 * k),
      len_(exact_ ? static_cast<int>(lemma_degree_cap(b)) + 1 : std::max(b.delta() + 1, 1)),
      s_max_(s_max), cap_(lemma_degree_cap(b)), words_(word_count(s_max)), source_(b),
      costs_(b, width_, len_) {
    bits_.assign(static_cast<std::size_t>(len_) * width_ * words_, 0);
}

const std::uint64_t* DpTable::row(int i, int t) const {
    return bits_.data() + (static_cast<std::size_t>(i) * width_ + t) * words_;
}

std::uint64_t* DpTable::row(int i, int t) {
    return bits_.data() + (static_cast<std::size_t>(i) * width_ + t) * words_;
}

bool DpTable::feasible(int i, int t, Count c) const {
    if (c < 0 || c > s_max_ || t < 0 || t >= width_ || i < 0 || i >= len_)
        return false;
    return row(i, t)[static_cast<std::size_t>(c) / 64] >> (c % 64) & 1;
}

DpTable DpTable::build(const BlockSequence& b, int k, Count s_max, Count exact_limit) {
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (s_max < 0)
        throw std::invalid_argument("s_max must be non-negative");
    DpTable table(b, k, s_max, b.vertex_count() <= exact_limit);
    const BlockSequence& src = table.source_;
    int width = table.width_;

    for (int t = 0; t < width; ++t) {
        Count remaining = src.at(0) - t;
        if (remaining == 0 || remaining >= k)
            table.row(0, t)[0] |= 1;
    }
    // General step: of the t_in degrees arriving from below, the lowest land
    // at i and the highest pass over; leavers from block i replace them in
    // flight. Landers pay their full lift here, passers pay at their own
    // landing. b' = b_i + t_in - t_out covers every split, so this subsumes
    // both cases of the basic recursion and additionally reaches targets
    // whose blocks are filled entirely by risen degrees.
    for (int i = 1; i < table.len_; ++i) {
        Count bi = src.at(i);
        for (int t_out = 0; t_out < width; ++t_out) {
            std::uint64_t* dst = table.row(i, t_out);
            for (int t_in = 0; t_in < width; ++t_in) {
                Count filled = bi + t_in - t_out;
                if (filled < 0 || (filled > 0 && filled < k))
                    continue;
                int passers = static_cast<int>(std::max<Count>(0, t_out - bi));
                Count arrive_cost = table.costs_.at(i - 1, t_in);
                if (arrive_cost == kNoCost)
                    continue;
                Count charge = arrive_cost - table.costs_.at(i - 1, passers);
                if (charge > s_max)
                    continue;
                shift_or(dst, table.row(i - 1, t_in), charge, table.words_);
            }
        }
    }

    // Close the table. In the exact regime the level axis already reaches the
    // degree cap and everything must have settled. Otherwise any degrees
    // still in flight above the top block land together (fewer than 2k in
    // flight, at least k per block, so exactly one group) at some level up to
    // the cap.
    table.answer_.assign(table.words_, 0);
    const std::uint64_t* settled = table.row(table.len_ - 1, 0);
    for (std::size_t w = 0; w < table.words_; ++w)
        table.answer_[w] |= settled[w];
    if (!table.exact_) {
        int delta = table.len_ - 1;
        for (int t_in = k; t_in < width; ++t_in) {
            Count base = table.costs_.at(delta, t_in);
            if (base == kNoCost)
                continue;
            for (Count j = delta + 1; j <= table.cap_; ++j) {
                Count charge = base + static_cast<Count>(t_in) * (j - delta - 1);
                if (charge > s_max)
                    break;
                shift_or(table.answer_.data(), table.row(delta, t_in), charge, table.words_);
            }
        }
    }
    return table;
}

std::optional<Count> DpTable::min_total_cost() const { return next_total_cost(0); }

std::optional<Count> DpTable::next_total_cost(Count from) const {
    for (Count c = std::max<Count>(from, 0); c <= s_max_; ++c)
        if (answer_[static_cast<std::size_t>(c) / 64] >> (c % 64) & 1)
            return c;
    return std::nullopt;
}

std::optional<Count> min_cost(const BlockSequence& b, int k, Count budget) {
    if (budget < 0)
        throw std::invalid_argument("budget must be non-negative");
    Count s_max = std::min<Count>(budget, std::max<Count>(2 * k, 16));
    for (;;) {
        DpTable table = DpTable::build(b, k, s_max);
        if (auto best = table.min_total_cost())
            return best;
        if (s_max >= budget)
            return std::nullopt;
        s_max = std::min(budget, s_max * 2);
    }
}

namespace {

struct Enumerator {
    const DpTable& table;
    const BlockSequence& src;
    int k;
    Count limit;
    const std::function<bool(const AnonymizationSolution&)>& sink;
    EnumerationStats stats;
    bool stopped = false;
    std::vector<Count> target_counts; // b' per level, filled top-down

    void emit() {
        std::vector<Count> counts(target_counts.rbegin(), target_counts.rend());
        BlockSequence target{std::move(counts)};
        AnonymizationSolution solution;
        solution.cost = target.norm() - src.norm();
        solution.moves = natural_moves(target, src);
        solution.target = std::move(target);
        ++stats.emitted;
        if (!sink(solution) || (limit >= 0 && stats.emitted >= limit))
            stopped = true;
    }

    // Walks predecessors of state (i, t_out, c); target_counts holds the
    // levels above i.
    void descend(int i, int t_out, Count c) {
        if (stopped)
            return;
        Count bi = src.at(i);
        if (i == 0) {
            if (c == 0 && t_out <= bi && (bi - t_out == 0 || bi - t_out >= k)) {
                target_counts.push_back(bi - t_out);
                emit();
                target_counts.pop_back();
            }
            return;
        }
        for (int t_in = 0; t_in < table.state_width() && !stopped; ++t_in) {
            Count filled = bi + t_in - t_out;
            if (filled < 0 || (filled > 0 && filled < k))
                continue;
            int passers = static_cast<int>(std::max<Count>(0, t_out - bi));
            Count arrive_cost = table.costs().at(i - 1, t_in);
            if (arrive_cost == kNoCost)
                continue;
            Count charge = arrive_cost - table.costs().at(i - 1, passers);
            if (charge > c || !table.feasible(i - 1, t_in, c - charge))
                continue;
            target_counts.push_back(filled);
            descend(i - 1, t_in, c - charge);
            target_counts.pop_back();
        }
    }
};

} // namespace

EnumerationStats
enumerate_solutions(const DpTable& table, Count s, Count limit,
                    const std::function<bool(const AnonymizationSolution&)>& sink) {
    if (s < 0 || s > table.s_max())
        throw std::invalid_argument("enumerate_solutions: cost level is infeasible");
    Enumerator e{table, table.source(), table.k(), limit, sink, {}, false, {}};
    int top = table.levels() - 1;
    e.target_counts.reserve(table.levels() + 1);
    bool any = false;
    if (table.feasible(top, 0, s)) {
        any = true;
        e.descend(top, 0, s);
    }
    if (!table.exact()) {
        // Paths whose leftover flight lands as one new block above delta.
        for (int t_in = table.k(); t_in < table.state_width() && !e.stopped; ++t_in) {
            Count base = table.costs().at(top, t_in);
            if (base == kNoCost)
                continue;
            for (Count j = top + 1; j <= table.degree_cap() && !e.stopped; ++j) {
                Count charge = base + static_cast<Count>(t_in) * (j - top - 1);
                if (charge > s)
                    break;
                if (!table.feasible(top, t_in, s - charge))
                    continue;
                any = true;
                e.target_counts.push_back(t_in); // block j
                for (Count level = j - 1; level > top; --level)
                    e.target_counts.push_back(0);
                e.descend(top, t_in, s - charge);
                for (Count level = top; level < j; ++level)
                    e.target_counts.pop_back();
            }
        }
    }
    if (!any && e.stats.emitted == 0)
        throw std::invalid_argument("enumerate_solutions: cost level is infeasible");
    e.stats.truncated = e.stopped;
    return e.stats;
}

Count ReductionResult::substitution_cost() const {
    Count total = 0;
    for (const Substitution& sub : log)
        total += sub.cost;
    return total;
}

namespace {

// Minimum anonymization of the sub-block-sequence that only raises degrees by
// one step and keeps the anchor block full, or nullopt.
std::optional<BlockSequence> canonical_substitution(const BlockSequence& sub, int k) {
    Count budget = sub.vertex_count() * (sub.delta() + 1);
    auto best = min_cost(sub, k, budget);
    if (!best)
        return std::nullopt;
    DpTable table = DpTable::build(sub, k, *best);
    std::optional<BlockSequence> found;
    enumerate_solutions(table, *best, 4096, [&](const AnonymizationSolution& sol) {
        if (sol.target.delta() > sub.delta() || sol.target.at(0) < k)
            return true;
        if (difference(sol.target, sub).delta() > 1)
            return true;
        found = sol.target;
        return false;
    });
    return found;
}

} // namespace

ReductionResult apply_reduction_rule(const BlockSequence& b, int k) {
    ReductionResult result;
    std::vector<Count> counts = b.counts();
    int len = static_cast<int>(counts.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < len; ++i) {
            if (counts[i] < k)
                continue;
            // Next block of size >= k; everything between is the valley the
            // rule re-solves.
            int j = i + 1;
            while (j < len && counts[j] < k)
                ++j;
            if (j >= len || j == i + 1)
                continue;
            // The run starting at j must have k-1 spare degrees on top of
            // keeping each of its blocks at size k.
            Count run_sum = 0;
            bool run_ok = false;
            for (int l = j; l < len && counts[l] >= k; ++l) {
                run_sum += counts[l];
                if (run_sum >= static_cast<Count>(l - j + 2) * k - 1) {
                    run_ok = true;
                    break;
                }
            }
            if (!run_ok)
                continue;
            BlockSequence sub{std::vector<Count>(counts.begin() + i, counts.begin() + j + 1)};
            auto replacement = canonical_substitution(sub, k);
            if (!replacement || *replacement == sub)
                continue;
            Substitution entry;
            entry.start = i;
            entry.before.assign(counts.begin() + i, counts.begin() + j + 1);
            entry.cost = replacement->norm() - sub.norm();
            for (int l = 0; l <= j - i; ++l)
                counts[i + l] = replacement->at(l);
            entry.after.assign(counts.begin() + i, counts.begin() + j + 1);
            result.log.push_back(std::move(entry));
            changed = true;
            i = j - 1; // the run start may anchor the next pattern
        }
    }
    result.reduced = BlockSequence(std::move(counts));
    return result;
}

} // namespace kanon
