#include <doctest.h>

#include <stdexcept>

#include "kanon/generator.hpp"
#include "test_graphs.hpp"

using namespace kanon;

TEST_CASE("closed-form vertex and edge counts") {
    Graph one_step = barabasi_albert(1, 3, 7);
    CHECK(one_step.vertex_count() == 5);
    CHECK(one_step.degree(4) == 3); // the new vertex attaches to exactly m0

    Graph g = barabasi_albert(400, 3, 7);
    CHECK(g.vertex_count() == 404);
    CHECK(g.edge_count() == 6 + 1200);

    Graph g5 = barabasi_albert(200, 5, 7);
    CHECK(g5.vertex_count() == 206);
    CHECK(g5.edge_count() == 15 + 1000);
}

TEST_CASE("attachment invariants") {
    Graph g = barabasi_albert(300, 3, 11);
    // Simplicity follows from construction; each post-seed vertex has at
    // least its m0 attachment edges.
    Count degree_sum = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * g.edge_count());
    for (Vertex v = 4; v < g.vertex_count(); ++v)
        CHECK(g.degree(v) >= 3);
}

TEST_CASE("deterministic per seed") {
    CHECK(barabasi_albert(200, 3, 42) == barabasi_albert(200, 3, 42));
    CHECK_FALSE(barabasi_albert(200, 3, 42) == barabasi_albert(200, 3, 43));
}

TEST_CASE("heavy degree tail") {
    int over = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = barabasi_albert(5000, 3, seed);
        if (g.max_degree() > 30)
            ++over;
    }
    CHECK(over == 30);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(barabasi_albert(0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(barabasi_albert(5, 0, 1), std::invalid_argument);
}
