#include "kanon/realizability.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>

namespace kanon {

EgVerdict erdos_gallai_test(const BlockSequence& d) {
    EgVerdict verdict;
    verdict.parity_ok = d.norm() % 2 == 0;
    if (!verdict.parity_ok)
        return verdict;

    // Descending runs of equal degree.
    std::vector<std::pair<Count, Count>> runs; // (value, count)
    for (int v = d.delta(); v >= 0; --v)
        if (d.at(v) > 0)
            runs.push_back({v, d.at(v)});
    std::size_t positive = runs.size();
    if (!runs.empty() && runs.back().first == 0)
        --positive;

    // suffix_count[l], suffix_sum[l]: totals over runs l..end.
    std::vector<Count> suffix_count(runs.size() + 1, 0), suffix_sum(runs.size() + 1, 0);
    for (std::size_t l = runs.size(); l-- > 0;) {
        suffix_count[l] = suffix_count[l + 1] + runs[l].second;
        suffix_sum[l] = suffix_sum[l + 1] + runs[l].first * runs[l].second;
    }

    Count r = 0, lhs = 0;
    for (std::size_t j = 0; j < positive; ++j) {
        r += runs[j].second;
        lhs += runs[j].first * runs[j].second;
        // Tail contribution: degrees >= r give r each, smaller ones their value.
        auto split = std::partition_point(runs.begin() + j + 1, runs.end(),
                                          [&](const auto& run) { return run.first >= r; });
        std::size_t cut = static_cast<std::size_t>(split - runs.begin());
        Count tail = (suffix_count[j + 1] - suffix_count[cut]) * r + suffix_sum[cut];
        if (lhs > r * (r - 1) + tail) {
            verdict.first_failing_r = r;
            return verdict;
        }
    }
    verdict.realizable = true;
    return verdict;
}

EgVerdict erdos_gallai_test(const DegreeSequence& d) {
    return erdos_gallai_test(BlockSequence::from_degrees(d));
}

std::optional<Graph> realize_sequence(const DegreeSequence& d) {
    Count n = static_cast<Count>(d.size());
    std::vector<std::pair<Count, Vertex>> residual(n);
    for (Count v = 0; v < n; ++v) {
        if (d[v] < 0 || d[v] >= n)
            return std::nullopt;
        residual[v] = {d[v], static_cast<Vertex>(v)};
    }
    std::vector<Edge> edges;
    for (;;) {
        std::sort(residual.begin(), residual.end(), std::greater<>());
        if (residual.empty() || residual.front().first == 0)
            break;
        auto [need, v] = residual.front();
        residual.front().first = 0;
        if (need >= static_cast<Count>(residual.size()))
            return std::nullopt;
        for (Count i = 1; i <= need; ++i) {
            if (residual[i].first == 0)
                return std::nullopt;
            --residual[i].first;
            edges.push_back(make_edge(v, residual[i].second));
        }
    }
    return Graph::from_edges(n, edges);
}

GraphBlocks::GraphBlocks(const Graph& graph)
    : g(graph), blocks(block_sequence(graph)), members(degree_blocks(graph)) {}

namespace {

constexpr Count kRefineBlockLimit = 512;

struct SolutionShape {
    std::vector<Count> crossings;              // x[i]
    std::vector<int> drained;                  // source blocks with b > 0, target 0
    std::vector<Count> gap;                    // per drained block: least demand
    std::vector<Count> reach;                  // per source block: greatest demand
    std::vector<Count> max_leavers;            // per source block: min(b_j, x_j)
};

SolutionShape analyze(const BlockSequence& target, const BlockSequence& source) {
    SolutionShape shape;
    shape.crossings = boundary_crossings(target, source);
    int len = static_cast<int>(shape.crossings.size());
    shape.gap.assign(len, 0);
    shape.reach.assign(len, 0);
    shape.max_leavers.assign(len, 0);
    for (int j = 0; j <= source.delta(); ++j) {
        Count xj = j < len ? shape.crossings[j] : 0;
        shape.max_leavers[j] = std::min(source.at(j), xj);
        if (source.at(j) > 0 && target.at(j) == 0)
            shape.drained.push_back(j);
        if (shape.max_leavers[j] <= 0)
            continue;
        for (int i = j + 1; i < len + 1; ++i) {
            if (target.at(i) > 0 && shape.gap[j] == 0)
                shape.gap[j] = i - j;
            if (target.at(i) > 0)
                shape.reach[j] = i - j;
            if (i >= len || shape.crossings[i] == 0)
                break;
        }
    }
    return shape;
}

Count edges_within(const Graph& g, const std::vector<Vertex>& sorted_members) {
    Count twice = 0;
    for (Vertex v : sorted_members)
        for (Vertex w : g.neighbors(v))
            if (std::binary_search(sorted_members.begin(), sorted_members.end(), w))
                ++twice;
    return twice / 2;
}

// Capacity of the new edges the rest of the graph can offer the vertex set R,
// maximized over every degree-vertex mapping the solution admits. The
// adjacency-aware refinement is budgeted; blocks beyond the budget fall back
// to the coarse (larger, still sound) cap.
Count cross_capacity(const GraphBlocks& ctx, const SolutionShape& shape,
                     const std::vector<int>& r_blocks, const std::vector<Vertex>& r_members,
                     Count r, Count& refine_budget) {
    Count total = 0;
    for (int j = 0; j <= ctx.blocks.delta(); ++j) {
        if (shape.max_leavers[j] <= 0 || std::count(r_blocks.begin(), r_blocks.end(), j))
            continue;
        Count per_vertex_cap = std::min(shape.reach[j], r);
        if (per_vertex_cap <= 0)
            continue;
        Count block_work = ctx.blocks.at(j) * static_cast<Count>(j);
        if (ctx.blocks.at(j) > kRefineBlockLimit || block_work > refine_budget) {
            total += shape.max_leavers[j] * per_vertex_cap;
            continue;
        }
        refine_budget -= block_work;
        std::vector<Count> caps;
        caps.reserve(ctx.members[j].size());
        for (Vertex u : ctx.members[j]) {
            Count adjacent = 0;
            for (Vertex w : ctx.g.neighbors(u))
                if (std::binary_search(r_members.begin(), r_members.end(), w))
                    ++adjacent;
            caps.push_back(std::clamp<Count>(r - adjacent, 0, per_vertex_cap));
        }
        std::sort(caps.begin(), caps.end(), std::greater<>());
        for (Count l = 0; l < shape.max_leavers[j]; ++l)
            total += caps[l];
    }
    return total;
}

} // namespace

EgVerdict advanced_erdos_gallai_test(const GraphBlocks& ctx, const AnonymizationSolution& sol) {
    DifferenceSequence diff = difference(sol.target, ctx.blocks);
    EgVerdict verdict = erdos_gallai_test(diff);
    if (!verdict.realizable)
        return verdict;

    SolutionShape shape = analyze(sol.target, ctx.blocks);
    if (shape.drained.empty())
        return verdict;

    // Candidate sets R: single drained blocks plus prefixes of the drained
    // blocks ordered by decreasing forced demand. Any such R yields a sound
    // necessary inequality; these are the ones that bite in practice. The
    // count is capped so the test stays cheap when many blocks drain.
    constexpr std::size_t kMaxSingles = 8, kMaxPrefix = 8;
    std::vector<int> order = shape.drained;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return shape.gap[a] != shape.gap[b] ? shape.gap[a] > shape.gap[b] : a < b;
    });
    std::vector<std::vector<int>> candidates;
    for (std::size_t i = 0; i < std::min(order.size(), kMaxSingles); ++i)
        candidates.push_back({order[i]});
    for (std::size_t take = 2; take <= std::min(order.size(), kMaxPrefix); ++take)
        candidates.emplace_back(order.begin(), order.begin() + take);

    Count refine_budget = 200000; // adjacency scans across all candidates
    for (const std::vector<int>& r_blocks : candidates) {
        Count r = 0, lhs_min = 0;
        std::vector<Vertex> r_members;
        for (int j : r_blocks) {
            r += ctx.blocks.at(j);
            lhs_min += ctx.blocks.at(j) * shape.gap[j];
            r_members.insert(r_members.end(), ctx.members[j].begin(), ctx.members[j].end());
        }
        std::sort(r_members.begin(), r_members.end());

        Count internal = r * (r - 1) - 2 * edges_within(ctx.g, r_members);
        Count outside_mass = sol.cost - lhs_min;
        if (outside_mass < 0) {
            verdict.realizable = false;
            verdict.first_failing_r = r;
            return verdict;
        }
        Count cross = std::min(cross_capacity(ctx, shape, r_blocks, r_members, r, refine_budget),
                               outside_mass);
        if (lhs_min > internal + cross) {
            verdict.realizable = false;
            verdict.first_failing_r = r;
            return verdict;
        }
    }
    return verdict;
}

Count target_degree_cap(const Graph& g) {
    Count delta = g.max_degree();
    return std::min<Count>(g.vertex_count() - 1, 2 * delta * delta);
}

namespace {

AnonymizationSolution make_solution(const BlockSequence& target, const BlockSequence& source) {
    AnonymizationSolution sol;
    sol.cost = target.norm() - source.norm();
    sol.moves = natural_moves(target, source);
    sol.target = target;
    return sol;
}

} // namespace

void enumerate_waste_candidates(const GraphBlocks& ctx, const AnonymizationSolution& sol, int k,
                                Count budget, const std::function<bool(const WasteOutcome&)>& sink) {
    if (budget < 0)
        budget = 4 * std::max<Count>(ctx.g.max_degree(), 1);
    const Count cap = target_degree_cap(ctx.g);
    const Count base_norm = sol.target.norm();

    std::set<std::vector<Count>> already_emitted;
    auto emit = [&](const BlockSequence& target) {
        if (!already_emitted.insert(target.counts()).second)
            return true;
        WasteOutcome outcome;
        outcome.solution = make_solution(target, ctx.blocks);
        outcome.waste = target.norm() - base_norm;
        return sink(outcome);
    };

    // Parity first: a single increment somewhere is the cheapest repair, and
    // without it nothing can pass.
    if (sol.cost % 2 == 0 && advanced_erdos_gallai_test(ctx, sol).realizable)
        if (!emit(sol.target))
            return;

    // Fast path: one-step shifts between two adjacent blocks of size >= 2k.
    {
        std::vector<Count> counts = sol.target.counts();
        std::vector<std::pair<Count, int>> pairs; // (combined size, i), largest first
        for (int i = 0; i + 1 < static_cast<int>(counts.size()); ++i)
            if (counts[i] >= 2 * k && counts[i + 1] >= 2 * k && i + 1 <= cap)
                pairs.push_back({counts[i] + counts[i + 1], i});
        std::sort(pairs.begin(), pairs.end(), std::greater<>());
        for (auto [size, i] : pairs) {
            std::vector<Count> shifted = counts;
            for (Count w = 1; w <= budget && shifted[i] - 1 >= k; ++w) {
                --shifted[i];
                ++shifted[i + 1];
                BlockSequence target{std::vector<Count>(shifted)};
                AnonymizationSolution candidate = make_solution(target, ctx.blocks);
                if (candidate.cost % 2 != 0)
                    continue;
                if (advanced_erdos_gallai_test(ctx, candidate).realizable)
                    if (!emit(target))
                        return;
            }
        }
    }

    // Bounded uniform-cost search over k-anonymity-preserving shifts.
    constexpr std::size_t kMaxExplored = 20000;
    struct State {
        Count waste;
        std::size_t order;
        std::vector<Count> counts;
    };
    auto worse = [](const State& a, const State& b) {
        return a.waste != b.waste ? a.waste > b.waste : a.order > b.order;
    };
    std::priority_queue<State, std::vector<State>, decltype(worse)> frontier(worse);
    std::set<std::vector<Count>> seen;
    std::size_t order = 0;
    frontier.push({0, order++, sol.target.counts()});
    seen.insert(sol.target.counts());
    std::size_t explored = 0;
    while (!frontier.empty() && explored < kMaxExplored) {
        State state = frontier.top();
        frontier.pop();
        ++explored;
        if (state.waste > 0) {
            BlockSequence target{std::vector<Count>(state.counts)};
            AnonymizationSolution candidate = make_solution(target, ctx.blocks);
            if (candidate.cost % 2 == 0 &&
                advanced_erdos_gallai_test(ctx, candidate).realizable)
                if (!emit(target))
                    return;
        }
        int len = static_cast<int>(state.counts.size());
        for (int i = 0; i < len; ++i) {
            if (state.counts[i] == 0)
                continue;
            // Shift widths that can matter: one degree, drain the block,
            // leave exactly k behind, or just fill the destination to k.
            Count dest = i + 1 < len ? state.counts[i + 1] : 0;
            std::vector<Count> widths = {1, state.counts[i], state.counts[i] - k};
            if (dest < k)
                widths.push_back(k - dest);
            std::sort(widths.begin(), widths.end());
            widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
            for (Count w : widths) {
                if (w <= 0 || w > state.counts[i] || state.waste + w > budget)
                    continue;
                if (i + 1 > cap)
                    continue;
                Count src_left = state.counts[i] - w;
                if (src_left != 0 && src_left < k)
                    continue;
                if (dest + w < k)
                    continue;
                std::vector<Count> next = state.counts;
                if (i + 1 >= len)
                    next.push_back(0);
                next[i] -= w;
                next[i + 1] += w;
                while (!next.empty() && next.back() == 0)
                    next.pop_back();
                if (seen.insert(next).second)
                    frontier.push({state.waste + w, order++, std::move(next)});
            }
        }
    }
}

std::optional<WasteOutcome> waste_to_realizable(const GraphBlocks& ctx,
                                                const AnonymizationSolution& sol, int k,
                                                Count budget) {
    std::optional<WasteOutcome> found;
    enumerate_waste_candidates(ctx, sol, k, budget, [&](const WasteOutcome& outcome) {
        found = outcome;
        return false;
    });
    return found;
}

} // namespace kanon
