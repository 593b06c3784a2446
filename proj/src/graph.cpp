#include "kanon/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace kanon {

Graph Graph::from_edges(Count n, const std::vector<Edge>& edges) {
    Graph g;
    g.n_ = n;
    g.offsets_.assign(n + 1, 0);

    std::vector<Edge> clean;
    clean.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw std::out_of_range("edge endpoint outside vertex range");
        if (e.u == e.v)
            continue;
        clean.push_back(make_edge(e.u, e.v));
    }
    std::sort(clean.begin(), clean.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

    g.m_ = static_cast<Count>(clean.size());
    for (const Edge& e : clean) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (Count v = 0; v < n; ++v)
        g.offsets_[v + 1] += g.offsets_[v];

    g.adjacency_.resize(2 * g.m_);
    std::vector<Count> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : clean) {
        g.adjacency_[cursor[e.u]++] = e.v;
        g.adjacency_[cursor[e.v]++] = e.u;
    }
    for (Count v = 0; v < n; ++v)
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);

    for (Count v = 0; v < n; ++v)
        g.delta_ = std::max<int>(g.delta_, static_cast<int>(g.degree(static_cast<Vertex>(v))));
    return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u == v)
        return false;
    if (degree(u) > degree(v))
        std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> result;
    result.reserve(m_);
    for (Count u = 0; u < n_; ++u)
        for (Vertex v : neighbors(static_cast<Vertex>(u)))
            if (static_cast<Count>(v) > u)
                result.push_back({static_cast<Vertex>(u), v});
    return result;
}

DegreeSequence degree_sequence(const Graph& g) {
    DegreeSequence degrees(g.vertex_count());
    for (Count v = 0; v < g.vertex_count(); ++v)
        degrees[v] = g.degree(static_cast<Vertex>(v));
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

BlockSequence block_sequence(const Graph& g) {
    std::vector<Count> counts(g.max_degree() + 1, 0);
    for (Count v = 0; v < g.vertex_count(); ++v)
        ++counts[g.degree(static_cast<Vertex>(v))];
    return BlockSequence(std::move(counts));
}

std::vector<std::vector<Vertex>> degree_blocks(const Graph& g) {
    std::vector<std::vector<Vertex>> blocks(g.max_degree() + 1);
    for (Count v = 0; v < g.vertex_count(); ++v)
        blocks[g.degree(static_cast<Vertex>(v))].push_back(static_cast<Vertex>(v));
    return blocks;
}

Graph add_edges(const Graph& g, const EdgeInsertionSet& s) {
    std::vector<Edge> all = g.edges();
    Count before = static_cast<Count>(all.size());
    std::vector<Edge> incoming;
    incoming.reserve(s.edges.size());
    for (const Edge& e : s.edges) {
        if (e.u == e.v)
            throw std::invalid_argument("insertion set contains a self-loop");
        if (g.has_edge(e.u, e.v))
            throw std::invalid_argument("insertion set contains an edge already present");
        incoming.push_back(make_edge(e.u, e.v));
    }
    std::sort(incoming.begin(), incoming.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    if (std::adjacent_find(incoming.begin(), incoming.end()) != incoming.end())
        throw std::invalid_argument("insertion set contains a duplicate edge");
    all.insert(all.end(), incoming.begin(), incoming.end());
    Graph result = Graph::from_edges(g.vertex_count(), all);
    if (result.edge_count() != before + static_cast<Count>(incoming.size()))
        throw std::logic_error("edge insertion lost edges");
    return result;
}

} // namespace kanon
