#ifndef KANON_TEST_GRAPHS_HPP
#define KANON_TEST_GRAPHS_HPP

#include <vector>

#include "kanon/graph.hpp"
#include "kanon/rng.hpp"

namespace kanon::testing {

// 4 vertices: a pendant attached to a triangle. Degrees 1,3,2,2.
inline Graph paw_graph() {
    return Graph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}});
}

// 10 vertices, block sequence {0,3,1,4,0,1,1}; adding one edge between the
// degree-2 and the degree-5 vertex makes it 2-anonymous.
inline Graph ten_vertex_graph() {
    return Graph::from_edges(10, {{0, 3},
                                  {1, 3},
                                  {2, 3},
                                  {3, 4},
                                  {3, 6},
                                  {4, 5},
                                  {4, 6},
                                  {4, 7},
                                  {4, 8},
                                  {4, 9},
                                  {5, 9},
                                  {8, 9},
                                  {7, 8},
                                  {6, 7}});
}

// 24 vertices, block sequence {0,15,0,3,2,1,0,2,0,1}; the only minimum
// 2-anonymization lifts a degree-3 vertex straight to degree 5.
inline Graph jump_graph() {
    std::vector<Edge> edges;
    // hub 0 with nine leaves 9..17
    for (Vertex leaf = 9; leaf <= 17; ++leaf)
        edges.push_back({0, leaf});
    // three leaves each for vertices 1 and 2
    for (Vertex leaf = 18; leaf <= 20; ++leaf)
        edges.push_back({1, leaf});
    for (Vertex leaf = 21; leaf <= 23; ++leaf)
        edges.push_back({2, leaf});
    edges.push_back({1, 6});
    edges.push_back({2, 8});
    std::vector<Edge> core = {{3, 4}, {3, 6}, {4, 5}, {5, 7}, {5, 8}, {1, 3}, {1, 4},
                              {1, 5}, {2, 3}, {2, 4}, {2, 5}, {6, 7}, {7, 8}};
    edges.insert(edges.end(), core.begin(), core.end());
    return Graph::from_edges(24, edges);
}

// Path on 3 vertices plus a disjoint edge; block sequence {0,4,1}.
inline Graph path_plus_edge() {
    return Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
}

inline Graph random_graph(Count n, double edge_probability, Rng& rng) {
    std::vector<Edge> edges;
    auto threshold = static_cast<std::uint64_t>(edge_probability * 4294967296.0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.below(4294967296ULL) < threshold)
                edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

inline BlockSequence random_block_sequence(Count n, int delta, Rng& rng) {
    std::vector<Count> counts(delta + 1, 0);
    for (Count i = 0; i < n; ++i)
        ++counts[rng.below(delta + 1)];
    return BlockSequence(counts);
}

} // namespace kanon::testing

#endif
