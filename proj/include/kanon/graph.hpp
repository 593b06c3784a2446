#ifndef KANON_GRAPH_HPP
#define KANON_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kanon/block_sequence.hpp"

namespace kanon {

using Vertex = std::int32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    bool operator==(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Set of edges to insert into a graph. Pairs are normalized (u < v) and
/// duplicate-free.
struct EdgeInsertionSet {
    std::vector<Edge> edges;

    Count size() const { return static_cast<Count>(edges.size()); }
};

/// Simple undirected graph over dense vertex ids 0..n-1, stored CSR-style
/// with sorted neighbor lists. Immutable after construction; all queries are
/// safe for concurrent use.
class Graph {
public:
    Graph() = default;

    /// Deduplicates edges and drops self-loops; callers that care about dirty
    /// input count those themselves (see graph_io).
    static Graph from_edges(Count n, const std::vector<Edge>& edges);

    Count vertex_count() const { return n_; }
    Count edge_count() const { return m_; }
    int max_degree() const { return delta_; }

    Count degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const Vertex> neighbors(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    Count n_ = 0;
    Count m_ = 0;
    int delta_ = 0;
    std::vector<Count> offsets_;
    std::vector<Vertex> adjacency_;
};

DegreeSequence degree_sequence(const Graph& g);
BlockSequence block_sequence(const Graph& g);

/// Per-degree vertex lists: result[d] = ids of all degree-d vertices.
std::vector<std::vector<Vertex>> degree_blocks(const Graph& g);

/// New graph with the edges of s inserted. Throws if s contains a self-loop,
/// a duplicate, or an edge already present.
Graph add_edges(const Graph& g, const EdgeInsertionSet& s);

} // namespace kanon

#endif
