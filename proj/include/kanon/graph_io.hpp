#ifndef KANON_GRAPH_IO_HPP
#define KANON_GRAPH_IO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "kanon/graph.hpp"

namespace kanon {

enum class GraphFormat { metis, edge_list };

std::optional<GraphFormat> parse_format(const std::string& name);

/// Raised on malformed input; message carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what);
};

struct LoadResult {
    Graph graph;
    Count dropped_self_loops = 0;
    Count dropped_duplicates = 0;
};

/// Edge list: one "u v" pair per line, '#' starts a comment, blank lines are
/// skipped. index_base selects 0- or 1-based ids. Self-loops and duplicates
/// are dropped and counted. declared_n, when given, fixes the vertex count
/// (isolated tail vertices); it is an error if an id exceeds it.
LoadResult load_edge_list(const std::string& path, int index_base = 0,
                          std::optional<Count> declared_n = std::nullopt);
LoadResult load_edge_list(std::istream& in, const std::string& name, int index_base = 0,
                          std::optional<Count> declared_n = std::nullopt);

/// METIS: header "n m [fmt]", line i+1 holds the 1-based neighbors of vertex
/// i, '%' starts a comment line. Weighted fmt codes are rejected. The header
/// counts and the adjacency symmetry are validated.
LoadResult load_metis(const std::string& path);
LoadResult load_metis(std::istream& in, const std::string& name);

LoadResult load_graph(const std::string& path, GraphFormat format, int index_base = 0,
                      std::optional<Count> declared_n = std::nullopt);

/// Writers emit neighbors in ascending order, so output is byte-deterministic
/// and loading it back reproduces the adjacency structure exactly.
void write_metis(std::ostream& out, const Graph& g);
void write_edge_list(std::ostream& out, const Graph& g, int index_base = 0);
void write_graph(const std::string& path, const Graph& g, GraphFormat format,
                 int index_base = 0);

/// One "u v" edge per line, same conventions as the edge-list graph format.
EdgeInsertionSet load_edge_set(const std::string& path, int index_base = 0);
void write_edge_set(std::ostream& out, const EdgeInsertionSet& s, int index_base = 0);

} // namespace kanon

#endif
