#ifndef KANON_GENERATOR_HPP
#define KANON_GENERATOR_HPP

#include <cstdint>

#include "kanon/graph.hpp"

namespace kanon {

/// Barabasi-Albert preferential attachment. Starts from a clique on m0+1
/// vertices; each of the `steps` new vertices attaches to m0 distinct
/// existing vertices drawn with probability proportional to current degree
/// (repeated endpoint draws with rejection). Deterministic given the seed.
Graph barabasi_albert(Count steps, int m0, std::uint64_t seed);

} // namespace kanon

#endif
