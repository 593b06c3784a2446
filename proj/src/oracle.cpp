#include "kanon/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace kanon {
namespace oracle {

namespace {

bool degrees_k_anonymous(const std::vector<Count>& degrees, int k) {
    std::vector<Count> counts;
    for (Count d : degrees) {
        if (d >= static_cast<Count>(counts.size()))
            counts.resize(d + 1, 0);
        ++counts[d];
    }
    for (Count c : counts)
        if (c != 0 && c < k)
            return false;
    return true;
}

} // namespace

std::optional<EdgeInsertionSet> brute_force_min_insertion(const Graph& g, int k, Count edge_cap,
                                                          Count n_limit) {
    Count n = g.vertex_count();
    if (n > n_limit)
        throw std::invalid_argument("brute_force_min_insertion: graph exceeds size limit");

    std::vector<Edge> complement;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v))
                complement.push_back({u, v});

    std::vector<Count> base(n);
    for (Count v = 0; v < n; ++v)
        base[v] = g.degree(static_cast<Vertex>(v));

    Count total = static_cast<Count>(complement.size());
    for (Count size = 0; size <= std::min(edge_cap, total); ++size) {
        // Lexicographic walk over size-subsets of the complement.
        std::vector<Count> pick(size);
        for (Count i = 0; i < size; ++i)
            pick[i] = i;
        for (;;) {
            std::vector<Count> degrees = base;
            for (Count i : pick) {
                ++degrees[complement[i].u];
                ++degrees[complement[i].v];
            }
            if (degrees_k_anonymous(degrees, k)) {
                EdgeInsertionSet result;
                for (Count i : pick)
                    result.edges.push_back(complement[i]);
                return result;
            }
            Count pos = size;
            while (pos-- > 0 && pick[pos] == total - size + pos)
                ;
            if (pos < 0 || size == 0)
                break;
            ++pick[pos];
            for (Count i = pos + 1; i < size; ++i)
                pick[i] = pick[i - 1] + 1;
        }
    }
    return std::nullopt;
}

namespace {

struct KdsaSearch {
    const BlockSequence& b;
    int k;
    int max_level;
    Count n;
    std::vector<Count> cum_source;    // per level: source degrees <= level
    std::vector<Count> suffix_norm;   // per level: sum of source degrees > level
    Count best;

    // Chooses the size of every target block left to right; placed vertices
    // may never outnumber the available sources (dominance).
    void descend(int level, Count placed, Count partial_norm) {
        if (placed == n) {
            best = std::min(best, partial_norm);
            return;
        }
        if (level > max_level)
            return;
        Count remaining = n - placed;
        // Remaining targets sit at >= level and at >= their own source degree.
        Count completion = std::max(static_cast<Count>(level) * remaining,
                                    suffix_norm[std::min(level, max_level)]);
        if (partial_norm + completion >= best)
            return;
        Count available = cum_source[std::min(level, max_level)] - placed;
        Count top = std::min(remaining, available);
        descend(level + 1, placed, partial_norm);
        for (Count size = k; size <= top; ++size)
            descend(level + 1, placed + size, partial_norm + size * level);
    }
};

} // namespace

std::optional<Count> brute_force_kdsa(const BlockSequence& b, int k, Count n_limit,
                                      int delta_limit) {
    Count n = b.vertex_count();
    if (n > n_limit || b.delta() > delta_limit)
        throw std::invalid_argument("brute_force_kdsa: instance exceeds size limits");
    if (n == 0)
        return 0;
    if (n < k)
        return std::nullopt;

    int max_level = b.delta() + k;
    KdsaSearch search{b, k, max_level, n, {}, {}, 0};
    search.cum_source.resize(max_level + 1);
    search.suffix_norm.resize(max_level + 1);
    Count cum = 0;
    for (int l = 0; l <= max_level; ++l) {
        cum += b.at(l);
        search.cum_source[l] = cum;
    }
    Count tail = 0;
    for (int l = max_level; l >= 0; --l) {
        search.suffix_norm[l] = tail;
        tail += static_cast<Count>(l) * b.at(l);
    }
    // Everything in one block at the current maximum is always feasible, so
    // its target norm is a valid initial bound.
    search.best = n * b.delta();
    search.descend(0, 0, 0);
    return search.best - b.norm();
}

namespace {

struct RealizableSearch {
    Count n;
    std::vector<Count> residual;
    std::vector<std::pair<Vertex, Vertex>> pairs;

    bool descend(std::size_t idx) {
        if (std::all_of(residual.begin(), residual.end(), [](Count r) { return r == 0; }))
            return true;
        if (idx == pairs.size())
            return false;
        auto [i, j] = pairs[idx];
        // Once the walk moves past vertex i's pairs, i can never gain edges.
        if (idx > 0 && pairs[idx - 1].first != i && residual[pairs[idx - 1].first] != 0)
            return false;
        if (residual[i] > n - j)
            return false;
        if (residual[i] > 0 && residual[j] > 0) {
            --residual[i];
            --residual[j];
            if (descend(idx + 1))
                return true;
            ++residual[i];
            ++residual[j];
        }
        return descend(idx + 1);
    }
};

} // namespace

bool brute_force_realizable(const DegreeSequence& d) {
    Count n = static_cast<Count>(d.size());
    if (n > 8)
        throw std::invalid_argument("brute_force_realizable: more than 8 vertices");
    Count sum = 0;
    for (Count value : d) {
        if (value < 0)
            return false;
        sum += value;
    }
    if (sum % 2 != 0)
        return false;
    RealizableSearch search;
    search.n = n;
    search.residual.assign(d.begin(), d.end());
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            search.pairs.push_back({i, j});
    return search.descend(0);
}

} // namespace oracle
} // namespace kanon
