#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <algorithm>

#include "kanon/graph.hpp"
#include "test_graphs.hpp"

using namespace kanon;

TEST_CASE("construction normalizes input") {
    // Self-loops and duplicates vanish, adjacency comes out sorted.
    Graph g = Graph::from_edges(4, {{1, 0}, {0, 1}, {2, 2}, {3, 1}});
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(1) == 2);
    auto nb = g.neighbors(1);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 3));
    CHECK_FALSE(g.has_edge(2, 2));
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), std::out_of_range);
}

TEST_CASE("degree bookkeeping") {
    Graph g = testing::ten_vertex_graph();
    CHECK(g.vertex_count() == 10);
    CHECK(g.edge_count() == 14);
    CHECK(g.max_degree() == 6);
    Count degree_sum = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * g.edge_count());

    auto blocks = degree_blocks(g);
    CHECK(blocks[6] == std::vector<Vertex>{4});
    CHECK(blocks[5] == std::vector<Vertex>{3});
    CHECK(blocks[1] == std::vector<Vertex>{0, 1, 2});
    CHECK(blocks[0].empty());
}

TEST_CASE("edges lists each pair once, normalized") {
    Graph g = testing::paw_graph();
    std::vector<Edge> edges = g.edges();
    CHECK(edges.size() == 4);
    for (const Edge& e : edges)
        CHECK(e.u < e.v);
    CHECK(Graph::from_edges(g.vertex_count(), edges) == g);
}
