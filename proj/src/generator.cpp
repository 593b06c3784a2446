#include "kanon/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "kanon/rng.hpp"

namespace kanon {

Graph barabasi_albert(Count steps, int m0, std::uint64_t seed) {
    if (m0 < 1)
        throw std::invalid_argument("m0 must be at least 1");
    if (steps < 1)
        throw std::invalid_argument("steps must be at least 1");

    Rng rng(seed);
    std::vector<Edge> edges;
    // Each edge contributes both endpoints, so a uniform draw from this list
    // is a degree-proportional vertex draw.
    std::vector<Vertex> endpoints;

    Vertex clique = static_cast<Vertex>(m0) + 1;
    for (Vertex u = 0; u < clique; ++u)
        for (Vertex v = u + 1; v < clique; ++v) {
            edges.push_back({u, v});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }

    std::vector<Vertex> chosen;
    for (Count step = 0; step < steps; ++step) {
        Vertex fresh = clique + static_cast<Vertex>(step);
        chosen.clear();
        // Draws see the degrees as they were before this vertex arrived.
        std::size_t frozen = endpoints.size();
        while (static_cast<int>(chosen.size()) < m0) {
            Vertex target = endpoints[rng.below(frozen)];
            if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
                chosen.push_back(target);
        }
        for (Vertex target : chosen) {
            edges.push_back(make_edge(target, fresh));
            endpoints.push_back(target);
            endpoints.push_back(fresh);
        }
    }
    return Graph::from_edges(clique + steps, edges);
}

} // namespace kanon
