#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <map>
#include <set>

#include "kanon/phase2.hpp"
#include "test_graphs.hpp"

using namespace kanon;

namespace {

AnonymizationSolution solution_for(const GraphBlocks& ctx, const BlockSequence& target) {
    AnonymizationSolution sol;
    sol.target = target;
    sol.cost = target.norm() - ctx.blocks.norm();
    sol.moves = natural_moves(target, ctx.blocks);
    return sol;
}

std::vector<JumpConfiguration> all_configs(const BlockSequence& source,
                                           const AnonymizationSolution& sol, int max_blocks = 10,
                                           Count cap = 5) {
    std::vector<JumpConfiguration> configs;
    enumerate_jump_configs(source, sol, max_blocks, cap, [&](const JumpConfiguration& c) {
        configs.push_back(c);
        return true;
    });
    return configs;
}

} // namespace

TEST_CASE("two interpretations of {3,2,1} -> {2,2,2}") {
    BlockSequence source({3, 2, 1});
    AnonymizationSolution sol;
    sol.target = BlockSequence({2, 2, 2});
    sol.cost = 2;
    sol.moves = natural_moves(sol.target, source);

    auto configs = all_configs(source, sol);
    REQUIRE(configs.size() == 2);
    CHECK(configs[0].trivial()); // the natural interpretation comes first

    CHECK(moves_for_jumps(sol.target, source, configs[0]) ==
          std::vector<DegreeMove>{{0, 1, 1}, {1, 2, 1}});
    // One degree-zero vertex jumps over the non-empty block 1.
    CHECK(configs[1].jumps == std::vector<std::pair<int, Count>>{{1, 1}});
    CHECK(moves_for_jumps(sol.target, source, configs[1]) ==
          std::vector<DegreeMove>{{0, 2, 1}});
}

TEST_CASE("jump instance enumerates the degree-3-to-5 jump") {
    Graph g = testing::jump_graph();
    GraphBlocks ctx(g);
    AnonymizationSolution sol = solution_for(ctx, BlockSequence({0, 15, 0, 2, 2, 2, 0, 0, 0, 3}));

    auto configs = all_configs(ctx.blocks, sol);
    REQUIRE(configs.size() == 2);
    CHECK(configs[0].trivial());
    CHECK(configs[1].jumps == std::vector<std::pair<int, Count>>{{4, 1}});
    // The jump interpretation lifts a degree-3 vertex straight to degree 5.
    CHECK(moves_for_jumps(sol.target, ctx.blocks, configs[1]) ==
          std::vector<DegreeMove>{{3, 5, 1}, {7, 9, 2}});
}

TEST_CASE("forced assignments in singleton blocks") {
    Graph g = testing::ten_vertex_graph();
    GraphBlocks ctx(g);
    AnonymizationSolution sol = solution_for(ctx, BlockSequence({0, 3, 0, 5, 0, 0, 2}));
    Rng rng(1);
    DegreeVertexMapping mapping = sample_mapping(ctx, sol.moves, rng);
    CHECK(mapping.target_degree[5] == 3); // the unique degree-2 vertex
    CHECK(mapping.target_degree[3] == 6); // the unique degree-5 vertex
    DemandFunction demand = demand_function(g, mapping);
    CHECK(demand.total == 2);
    CHECK(demand.support() == std::vector<Vertex>{3, 5});
}

TEST_CASE("mapping samples blocks uniformly") {
    Graph g = testing::path_plus_edge();
    GraphBlocks ctx(g);
    REQUIRE(ctx.blocks.counts() == std::vector<Count>{0, 4, 1});
    AnonymizationSolution sol = solution_for(ctx, BlockSequence({0, 2, 3}));
    REQUIRE(sol.moves == std::vector<DegreeMove>{{1, 2, 2}});

    std::map<std::pair<Vertex, Vertex>, int> chosen;
    const int rounds = 12000;
    for (int seed = 0; seed < rounds; ++seed) {
        Rng rng(seed);
        DegreeVertexMapping mapping = sample_mapping(ctx, sol.moves, rng);
        std::vector<Vertex> raised;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (mapping.target_degree[v] > g.degree(v))
                raised.push_back(v);
        REQUIRE(raised.size() == 2);
        ++chosen[{raised[0], raised[1]}];
    }
    // All six pairs of degree-one vertices appear, roughly uniformly.
    CHECK(chosen.size() == 6);
    for (const auto& [pair, count] : chosen) {
        CHECK(count > rounds / 6 * 0.8);
        CHECK(count < rounds / 6 * 1.2);
    }
}

TEST_CASE("local exchange basics") {
    SUBCASE("single demand pair") {
        Graph g = Graph::from_edges(4, {{0, 1}});
        DemandFunction demand;
        demand.demand = {0, 0, 1, 1};
        demand.total = 2;
        auto s = local_exchange(g, demand, Rng(5));
        REQUIRE(s.has_value());
        CHECK(s->edges == std::vector<Edge>{{2, 3}});
    }
    SUBCASE("odd demand is rejected immediately") {
        Graph g = Graph::from_edges(3, {});
        DemandFunction demand;
        demand.demand = {1, 1, 1};
        demand.total = 3;
        CHECK_FALSE(local_exchange(g, demand, Rng(5)).has_value());
    }
    SUBCASE("the ten-vertex graph's bold edge") {
        Graph g = testing::ten_vertex_graph();
        DemandFunction demand;
        demand.demand.assign(10, 0);
        demand.demand[3] = 1;
        demand.demand[5] = 1;
        demand.total = 2;
        auto s = local_exchange(g, demand, Rng(7));
        REQUIRE(s.has_value());
        CHECK(s->edges == std::vector<Edge>{{3, 5}});
    }
    SUBCASE("exchange rescues a blocked greedy order") {
        // u,v adjacent; whenever the greedy phase pairs a with b first, only
        // an exchange can finish.
        Graph g = Graph::from_edges(4, {{0, 1}});
        DemandFunction demand;
        demand.demand = {1, 1, 1, 1};
        demand.total = 4;
        for (int seed = 0; seed < 300; ++seed) {
            auto s = local_exchange(g, demand, Rng(seed));
            REQUIRE(s.has_value());
            CHECK(s->edges.size() == 2);
            std::vector<Count> got(4, 0);
            for (const Edge& e : s->edges) {
                ++got[e.u];
                ++got[e.v];
                CHECK_FALSE(g.has_edge(e.u, e.v));
            }
            CHECK(got == demand.demand);
        }
    }
    SUBCASE("single leftover vertex replaces one edge by two") {
        // Demands {v:2, a:1, b:1} with v adjacent to nobody; if greedy pairs
        // a with b, vertex v is alone with demand two.
        Graph g = Graph::from_edges(3, {});
        DemandFunction demand;
        demand.demand = {2, 1, 1};
        demand.total = 4;
        for (int seed = 0; seed < 300; ++seed) {
            auto s = local_exchange(g, demand, Rng(seed));
            REQUIRE(s.has_value());
            CHECK(s->edges.size() == 2);
        }
    }
}

TEST_CASE("work budget caps a local-exchange run deterministically") {
    Rng graph_rng(808);
    Graph g = testing::random_graph(30, 0.1, graph_rng);
    DemandFunction demand;
    demand.demand.assign(30, 1);
    demand.demand[0] = 2;
    demand.demand[1] = 1;
    demand.total = 0;
    for (Count d : demand.demand)
        demand.total += d;
    if (demand.total % 2 != 0) {
        demand.demand[2] = 0;
        --demand.total;
    }
    auto unlimited = local_exchange(g, demand, Rng(5));
    REQUIRE(unlimited.has_value());
    // A one-probe budget cannot place ~15 edges.
    CHECK_FALSE(local_exchange(g, demand, Rng(5), {}, 1).has_value());
    // Same budget, same seed: identical outcome and edge set.
    auto a = local_exchange(g, demand, Rng(5), {}, 100000);
    auto b = local_exchange(g, demand, Rng(5), {}, 100000);
    REQUIRE(a.has_value() == b.has_value());
    if (a)
        CHECK(a->edges == b->edges);
}

TEST_CASE("local exchange soundness on random demand functions") {
    Rng rng(404);
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = testing::random_graph(9, 0.35, rng);
        DemandFunction demand;
        demand.demand.assign(9, 0);
        for (int i = 0; i < 9; ++i)
            demand.demand[i] = rng.below(3);
        demand.total = 0;
        for (Count d : demand.demand)
            demand.total += d;
        if (demand.total % 2 != 0)
            continue;
        auto s = local_exchange(g, demand, Rng(rng.next()));
        if (!s)
            continue;
        std::vector<Count> got(9, 0);
        std::set<std::pair<Vertex, Vertex>> seen;
        for (const Edge& e : s->edges) {
            CHECK_FALSE(g.has_edge(e.u, e.v));
            CHECK(e.u != e.v);
            CHECK(seen.insert({e.u, e.v}).second);
            ++got[e.u];
            ++got[e.v];
        }
        CHECK(got == demand.demand);
        CHECK(static_cast<Count>(s->edges.size()) * 2 == demand.total);
    }
}

TEST_CASE("realize") {
    SUBCASE("paw graph becomes K4") {
        Graph g = testing::paw_graph();
        GraphBlocks ctx(g);
        AnonymizationSolution sol = solution_for(ctx, BlockSequence({0, 0, 0, 4}));
        RealizeResult res = realize(ctx, sol, RealizeConfig{}, 99);
        REQUIRE(res.status == RealizeStatus::found);
        std::vector<Edge> got = res.edges->edges;
        std::sort(got.begin(), got.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        CHECK(got == std::vector<Edge>{{0, 2}, {0, 3}});
        CHECK_FALSE(res.needed_jumps);
        InsertionReport report = verify_insertion(g, *res.edges, 4);
        CHECK(report.ok());
        CHECK(report.result_blocks.counts() == std::vector<Count>{0, 0, 0, 4});
    }
    SUBCASE("zero demand realizes as the empty set") {
        Graph g = add_edges(testing::ten_vertex_graph(), {{{3, 5}}});
        GraphBlocks ctx(g);
        AnonymizationSolution sol = solution_for(ctx, ctx.blocks);
        RealizeResult res = realize(ctx, sol, RealizeConfig{}, 1);
        REQUIRE(res.status == RealizeStatus::found);
        CHECK(res.edges->edges.empty());
    }
    SUBCASE("jump instance succeeds only through the jump configuration") {
        Graph g = testing::jump_graph();
        GraphBlocks ctx(g);
        AnonymizationSolution sol =
            solution_for(ctx, BlockSequence({0, 15, 0, 2, 2, 2, 0, 0, 0, 3}));

        RealizeConfig no_jumps;
        no_jumps.max_jump_blocks = 0;
        RealizeResult blocked = realize(ctx, sol, no_jumps, 12345);
        CHECK(blocked.status == RealizeStatus::exhausted);

        RealizeResult res = realize(ctx, sol, RealizeConfig{}, 12345);
        REQUIRE(res.status == RealizeStatus::found);
        CHECK(res.needed_jumps);
        CHECK(verify_insertion(g, *res.edges, 2).ok());
        CHECK(res.edges->edges.size() == 3);
    }
    SUBCASE("deterministic given the seed") {
        Graph g = testing::path_plus_edge();
        GraphBlocks ctx(g);
        AnonymizationSolution sol = solution_for(ctx, BlockSequence({0, 2, 3}));
        RealizeResult a = realize(ctx, sol, RealizeConfig{}, 2024);
        RealizeResult b = realize(ctx, sol, RealizeConfig{}, 2024);
        REQUIRE(a.status == RealizeStatus::found);
        REQUIRE(b.status == RealizeStatus::found);
        CHECK(a.edges->edges == b.edges->edges);
        CHECK(a.attempts == b.attempts);
    }
}

TEST_CASE("verify_insertion reports violations") {
    Graph g = testing::paw_graph();
    SUBCASE("valid set") {
        InsertionReport report = verify_insertion(g, {{{0, 2}, {0, 3}}}, 4);
        CHECK(report.ok());
        CHECK(report.edges_added == 2);
    }
    SUBCASE("empty set on an anonymous graph") {
        Graph anon = add_edges(g, {{{0, 2}, {0, 3}}});
        CHECK(verify_insertion(anon, {}, 4).ok());
    }
    SUBCASE("existing edge is named") {
        InsertionReport report = verify_insertion(g, {{{0, 1}}}, 2);
        CHECK_FALSE(report.valid);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0] == "edge already present: 0 1");
    }
    SUBCASE("valid but not anonymous") {
        InsertionReport report = verify_insertion(g, {{{0, 2}}}, 4);
        CHECK(report.valid);
        CHECK_FALSE(report.anonymous);
        CHECK_FALSE(report.ok());
    }
}
