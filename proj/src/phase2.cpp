#include "kanon/phase2.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <unordered_set>

namespace kanon {

namespace {

Count forced_pass(const std::vector<Count>& x, const BlockSequence& source, int i) {
    return std::max<Count>(0, x[i] - source.at(i));
}

Count max_pass(const std::vector<Count>& x, int i) {
    return std::min(i > 0 ? x[i - 1] : 0, x[i]);
}

} // namespace

std::vector<Count> jump_slack(const BlockSequence& target, const BlockSequence& source) {
    std::vector<Count> x = boundary_crossings(target, source);
    std::vector<Count> slack(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        slack[i] = max_pass(x, static_cast<int>(i)) -
                   forced_pass(x, source, static_cast<int>(i));
    return slack;
}

bool enumerate_jump_configs(const BlockSequence& source, const AnonymizationSolution& sol,
                            int max_jump_blocks, Count per_block_cap,
                            const std::function<bool(const JumpConfiguration&)>& sink) {
    if (!sink(JumpConfiguration{}))
        return false;
    std::vector<Count> slack = jump_slack(sol.target, source);
    std::vector<std::pair<int, Count>> candidates; // (block, max extra)
    for (std::size_t i = 0; i < slack.size(); ++i)
        if (slack[i] > 0)
            candidates.push_back({static_cast<int>(i), std::min(slack[i], per_block_cap)});
    int max_alpha = std::min<int>(max_jump_blocks, static_cast<int>(candidates.size()));

    for (int alpha = 1; alpha <= max_alpha; ++alpha) {
        // Index combination walk, lexicographic.
        std::vector<int> pick(alpha);
        for (int i = 0; i < alpha; ++i)
            pick[i] = i;
        for (;;) {
            // Odometer over per-block extra counts.
            JumpConfiguration config;
            config.jumps.resize(alpha);
            for (int i = 0; i < alpha; ++i)
                config.jumps[i] = {candidates[pick[i]].first, 1};
            for (;;) {
                if (!sink(config))
                    return false;
                int pos = alpha - 1;
                while (pos >= 0 && config.jumps[pos].second == candidates[pick[pos]].second)
                    --pos;
                if (pos < 0)
                    break;
                ++config.jumps[pos].second;
                for (int i = pos + 1; i < alpha; ++i)
                    config.jumps[i].second = 1;
            }
            int pos = alpha - 1;
            while (pos >= 0 && pick[pos] == static_cast<int>(candidates.size()) - alpha + pos)
                --pos;
            if (pos < 0)
                break;
            ++pick[pos];
            for (int i = pos + 1; i < alpha; ++i)
                pick[i] = pick[i - 1] + 1;
        }
    }
    return true;
}

std::vector<DegreeMove> moves_for_jumps(const BlockSequence& target, const BlockSequence& source,
                                        const JumpConfiguration& jumps) {
    std::vector<Count> x = boundary_crossings(target, source);
    int len = static_cast<int>(x.size());
    std::vector<Count> pass(len, 0);
    for (int i = 0; i < len; ++i)
        pass[i] = forced_pass(x, source, i);
    for (auto [block, extra] : jumps.jumps) {
        if (block < 0 || block >= len)
            throw std::invalid_argument("jump block out of range");
        pass[block] += extra;
        if (pass[block] > max_pass(x, block))
            throw std::invalid_argument("jump count exceeds slack");
    }

    std::vector<DegreeMove> moves;
    // In-flight degrees ordered by source value ascending; the lowest stop
    // first, the highest keep rising.
    std::deque<std::pair<int, Count>> in_flight;
    Count flying = 0;
    for (int i = 0; i < len; ++i) {
        Count stoppers = flying - pass[i];
        assert(stoppers >= 0);
        while (stoppers > 0) {
            auto& [src, cnt] = in_flight.front();
            Count take = std::min(cnt, stoppers);
            moves.push_back({src, i, take});
            cnt -= take;
            stoppers -= take;
            flying -= take;
            if (cnt == 0)
                in_flight.pop_front();
        }
        Count from_block = x[i] - pass[i];
        assert(from_block >= 0 && from_block <= source.at(i));
        if (from_block > 0) {
            in_flight.push_back({i, from_block});
            flying += from_block;
        }
    }
    assert(flying == 0);
    std::sort(moves.begin(), moves.end(), [](const DegreeMove& a, const DegreeMove& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    return moves;
}

std::vector<Vertex> DemandFunction::support() const {
    std::vector<Vertex> vs;
    for (std::size_t v = 0; v < demand.size(); ++v)
        if (demand[v] > 0)
            vs.push_back(static_cast<Vertex>(v));
    return vs;
}

DegreeVertexMapping sample_mapping(const GraphBlocks& ctx, const std::vector<DegreeMove>& moves,
                                   Rng& rng) {
    DegreeVertexMapping mapping;
    Count n = ctx.g.vertex_count();
    mapping.target_degree.resize(n);
    for (Count v = 0; v < n; ++v)
        mapping.target_degree[v] = ctx.g.degree(static_cast<Vertex>(v));

    for (std::size_t lo = 0; lo < moves.size();) {
        std::size_t hi = lo;
        Count needed = 0;
        while (hi < moves.size() && moves[hi].from == moves[lo].from)
            needed += moves[hi++].count;
        std::vector<Vertex> pool = ctx.members[moves[lo].from];
        if (needed > static_cast<Count>(pool.size()))
            throw std::invalid_argument("moves exceed block size");
        rng.partial_shuffle(pool, static_cast<std::size_t>(needed));
        std::size_t next = 0;
        for (std::size_t m = lo; m < hi; ++m)
            for (Count c = 0; c < moves[m].count; ++c)
                mapping.target_degree[pool[next++]] = moves[m].to;
        lo = hi;
    }
    return mapping;
}

DemandFunction demand_function(const Graph& g, const DegreeVertexMapping& mapping) {
    DemandFunction d;
    d.demand.resize(g.vertex_count());
    for (Count v = 0; v < g.vertex_count(); ++v) {
        Count need = mapping.target_degree[v] - g.degree(static_cast<Vertex>(v));
        if (need < 0)
            throw std::invalid_argument("mapping lowers a degree");
        d.demand[v] = need;
        d.total += need;
    }
    return d;
}

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v)
        std::swap(u, v);
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32 |
           static_cast<std::uint32_t>(v);
}

class ExchangeState {
public:
    ExchangeState(const Graph& g, const DemandFunction& demand)
        : g_(g), demand_(demand.demand), remaining_(demand.total) {
        for (Count v = 0; v < g.vertex_count(); ++v)
            if (demand_[v] > 0)
                active_.push_back(static_cast<Vertex>(v));
    }

    bool insertable(Vertex u, Vertex v) const {
        return u != v && !g_.has_edge(u, v) && !in_s_.count(edge_key(u, v));
    }

    void insert(Vertex u, Vertex v) {
        s_.push_back(make_edge(u, v));
        in_s_.insert(edge_key(u, v));
        consume(u);
        consume(v);
    }

    // Swap S[idx]={u,w} for {a,u'} and {b,w'}; only a and b lose demand.
    void exchange(std::size_t idx, Vertex a, Vertex au, Vertex b, Vertex bw) {
        in_s_.erase(edge_key(s_[idx].u, s_[idx].v));
        s_.erase(s_.begin() + static_cast<std::ptrdiff_t>(idx));
        s_.push_back(make_edge(a, au));
        in_s_.insert(edge_key(a, au));
        s_.push_back(make_edge(b, bw));
        in_s_.insert(edge_key(b, bw));
        consume(a);
        consume(b);
    }

    // Swap S[idx]={u,w} for {v,u} and {v,w}; v loses two units of demand.
    void exchange_single(std::size_t idx, Vertex v) {
        Vertex u = s_[idx].u, w = s_[idx].v;
        in_s_.erase(edge_key(u, w));
        s_.erase(s_.begin() + static_cast<std::ptrdiff_t>(idx));
        s_.push_back(make_edge(v, u));
        in_s_.insert(edge_key(v, u));
        s_.push_back(make_edge(v, w));
        in_s_.insert(edge_key(v, w));
        consume(v);
        consume(v);
    }

    const std::vector<Vertex>& active() const { return active_; }
    const std::vector<Edge>& inserted() const { return s_; }
    Count remaining() const { return remaining_; }
    Count demand(Vertex v) const { return demand_[v]; }

    std::vector<Edge> take_edges() { return std::move(s_); }

private:
    void consume(Vertex v) {
        --demand_[v];
        --remaining_;
        if (demand_[v] == 0) {
            auto it = std::find(active_.begin(), active_.end(), v);
            std::swap(*it, active_.back());
            active_.pop_back();
        }
    }

    const Graph& g_;
    std::vector<Count> demand_;
    Count remaining_;
    std::vector<Vertex> active_;
    std::vector<Edge> s_;
    std::unordered_set<std::uint64_t> in_s_;
};

} // namespace

std::optional<EdgeInsertionSet> local_exchange(const Graph& g, const DemandFunction& demand,
                                               Rng rng, const Deadline& deadline,
                                               Count work_budget) {
    if (demand.total % 2 != 0)
        return std::nullopt;
    ExchangeState state(g, demand);
    Count work_left = work_budget < 0 ? std::numeric_limits<Count>::max() : work_budget;
    auto probe = [&](Vertex u, Vertex v) {
        if (work_left <= 0)
            return false;
        --work_left;
        return state.insertable(u, v);
    };

    auto greedy = [&]() {
        const auto& active = state.active();
        if (active.size() < 2)
            return false;
        std::size_t draws = 2 * active.size() + 16;
        for (std::size_t attempt = 0; attempt < draws && work_left > 0; ++attempt) {
            std::size_t i = rng.below(active.size());
            std::size_t j = rng.below(active.size() - 1);
            if (j >= i)
                ++j;
            if (probe(active[i], active[j])) {
                state.insert(active[i], active[j]);
                return true;
            }
        }
        // Random draws found nothing; make sure no pair is insertable before
        // declaring the greedy phase stuck.
        std::vector<Vertex> sorted = active;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t a = 0; a < sorted.size() && work_left > 0; ++a)
            for (std::size_t b = a + 1; b < sorted.size(); ++b)
                if (probe(sorted[a], sorted[b])) {
                    state.insert(sorted[a], sorted[b]);
                    return true;
                }
        return false;
    };

    auto exchange_pair = [&]() {
        // Serve the starving vertices first: compatible edges are consumed by
        // every exchange, so the largest leftovers get the freshest pool.
        std::vector<Vertex> sorted = state.active();
        std::sort(sorted.begin(), sorted.end(), [&](Vertex a, Vertex b) {
            return state.demand(a) != state.demand(b) ? state.demand(a) > state.demand(b)
                                                      : a < b;
        });
        for (std::size_t a = 0; a < sorted.size(); ++a) {
            for (std::size_t b = a + 1; b < sorted.size(); ++b) {
                Vertex v1 = sorted[a], v2 = sorted[b];
                const auto& s = state.inserted();
                for (std::size_t idx = 0; idx < s.size(); ++idx) {
                    Vertex u = s[idx].u, w = s[idx].v;
                    if (probe(v1, u) && probe(v2, w)) {
                        state.exchange(idx, v1, u, v2, w);
                        return true;
                    }
                    if (probe(v1, w) && probe(v2, u)) {
                        state.exchange(idx, v1, w, v2, u);
                        return true;
                    }
                }
                if (deadline.expired() || work_left <= 0)
                    return false;
            }
        }
        return false;
    };

    auto exchange_single = [&]() {
        Vertex v = state.active().front();
        const auto& s = state.inserted();
        for (std::size_t idx = 0; idx < s.size() && work_left > 0; ++idx)
            if (probe(v, s[idx].u) && probe(v, s[idx].v)) {
                state.exchange_single(idx, v);
                return true;
            }
        return false;
    };

    while (state.remaining() > 0) {
        if (deadline.expired() || work_left <= 0)
            return std::nullopt;
        if (state.active().size() >= 2) {
            if (greedy() || exchange_pair())
                continue;
            return std::nullopt;
        }
        // One vertex left; its remaining demand is even and at least two.
        if (!exchange_single())
            return std::nullopt;
    }
    EdgeInsertionSet result;
    result.edges = state.take_edges();
    return result;
}

RealizeResult realize(const GraphBlocks& ctx, const AnonymizationSolution& sol,
                      const RealizeConfig& cfg, std::uint64_t seed, const Deadline& deadline) {
    RealizeResult result;
    std::uint64_t config_index = 0;
    bool completed = enumerate_jump_configs(
        ctx.blocks, sol, cfg.max_jump_blocks, cfg.jump_count_cap,
        [&](const JumpConfiguration& config) {
            if (cfg.config_cap >= 0 && static_cast<Count>(config_index) >= cfg.config_cap)
                return false;
            std::vector<DegreeMove> moves = moves_for_jumps(sol.target, ctx.blocks, config);
            for (int m = 0; m < cfg.mappings; ++m) {
                if (deadline.expired()) {
                    result.status = RealizeStatus::timed_out;
                    return false;
                }
                Rng map_rng(mix_seed(seed, config_index, static_cast<std::uint64_t>(m)));
                DegreeVertexMapping mapping = sample_mapping(ctx, moves, map_rng);
                DemandFunction demand = demand_function(ctx.g, mapping);
                for (int t = 0; t < cfg.trials; ++t) {
                    ++result.attempts;
                    Rng trial_rng(mix_seed(seed, config_index, static_cast<std::uint64_t>(m),
                                           static_cast<std::uint64_t>(t) + 1));
                    if (auto edges =
                            local_exchange(ctx.g, demand, trial_rng, deadline, cfg.work_budget)) {
                        result.status = RealizeStatus::found;
                        result.edges = std::move(edges);
                        result.needed_jumps = !config.trivial();
                        return false;
                    }
                    if (deadline.expired()) {
                        result.status = RealizeStatus::timed_out;
                        return false;
                    }
                }
                // All trials of a zero-randomness mapping fail identically.
                if (demand.total == 0)
                    break;
            }
            ++config_index;
            return true;
        });
    if (completed)
        result.status = RealizeStatus::exhausted;
    return result;
}

InsertionReport verify_insertion(const Graph& g, const EdgeInsertionSet& s, int k) {
    InsertionReport report;
    report.edges_added = s.size();
    report.valid = true;
    std::unordered_set<std::uint64_t> seen;
    for (const Edge& e : s.edges) {
        if (e.u == e.v) {
            report.violations.push_back("self-loop at vertex " + std::to_string(e.u));
            report.valid = false;
            continue;
        }
        if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count() || e.v >= g.vertex_count()) {
            report.violations.push_back("edge endpoint out of range: " + std::to_string(e.u) +
                                        " " + std::to_string(e.v));
            report.valid = false;
            continue;
        }
        if (!seen.insert(edge_key(e.u, e.v)).second) {
            report.violations.push_back("duplicate edge " + std::to_string(e.u) + " " +
                                        std::to_string(e.v));
            report.valid = false;
        }
        if (g.has_edge(e.u, e.v)) {
            report.violations.push_back("edge already present: " + std::to_string(e.u) + " " +
                                        std::to_string(e.v));
            report.valid = false;
        }
    }
    if (!report.valid) {
        report.result_blocks = block_sequence(g);
        report.anonymous = false;
        return report;
    }
    Graph extended = add_edges(g, s);
    report.result_blocks = block_sequence(extended);
    report.anonymous = is_k_anonymous(report.result_blocks, k);
    if (!report.anonymous)
        report.violations.push_back("result is not " + std::to_string(k) + "-anonymous");
    return report;
}

} // namespace kanon
