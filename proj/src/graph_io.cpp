#include "kanon/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>

namespace kanon {

namespace {

std::string location(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line);
}

// Whitespace-separated non-negative integers, empty on blank input.
std::vector<Count> parse_ints(const std::string& text, const std::string& path,
                              std::size_t line_no) {
    std::vector<Count> values;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p != end) {
        while (p != end && std::isspace(static_cast<unsigned char>(*p)))
            ++p;
        if (p == end)
            break;
        Count value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc() || value < 0)
            throw ParseError(path, line_no, "expected a non-negative integer");
        values.push_back(value);
        p = next;
    }
    return values;
}

std::string strip_comment(const std::string& line, char marker) {
    auto pos = line.find(marker);
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

ParseError::ParseError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(location(path, line) + ": " + what) {}

std::optional<GraphFormat> parse_format(const std::string& name) {
    if (name == "metis")
        return GraphFormat::metis;
    if (name == "edgelist" || name == "edge-list")
        return GraphFormat::edge_list;
    return std::nullopt;
}

LoadResult load_edge_list(std::istream& in, const std::string& name, int index_base,
                          std::optional<Count> declared_n) {
    if (index_base != 0 && index_base != 1)
        throw std::invalid_argument("index base must be 0 or 1");
    std::vector<Edge> edges;
    Count max_id = -1;
    std::string line;
    std::size_t line_no = 0;
    Count self_loops = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = strip_comment(line, '#');
        std::vector<Count> values = parse_ints(body, name, line_no);
        if (values.empty())
            continue;
        if (values.size() != 2)
            throw ParseError(name, line_no, "expected exactly two vertex ids");
        Count u = values[0] - index_base;
        Count v = values[1] - index_base;
        if (u < 0 || v < 0)
            throw ParseError(name, line_no, "vertex id below index base");
        max_id = std::max({max_id, u, v});
        if (u == v) {
            ++self_loops;
            continue;
        }
        edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
    }
    Count n = max_id + 1;
    if (declared_n) {
        if (*declared_n < n)
            throw ParseError(name, line_no, "vertex id exceeds declared vertex count");
        n = *declared_n;
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    Count duplicates =
        static_cast<Count>(edges.size() -
                           (std::unique(edges.begin(), edges.end()) - edges.begin()));
    LoadResult result;
    result.graph = Graph::from_edges(n, edges);
    result.dropped_self_loops = self_loops;
    result.dropped_duplicates = duplicates;
    return result;
}

LoadResult load_edge_list(const std::string& path, int index_base,
                          std::optional<Count> declared_n) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return load_edge_list(in, path, index_base, declared_n);
}

LoadResult load_metis(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;

    auto next_content_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line[0] == '%')
                continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header))
        throw ParseError(name, line_no, "missing METIS header");
    std::vector<Count> head = parse_ints(header, name, line_no);
    if (head.size() < 2 || head.size() > 3)
        throw ParseError(name, line_no, "METIS header must be \"n m [fmt]\"");
    Count n = head[0];
    Count declared_m = head[1];
    if (head.size() == 3 && head[2] != 0)
        throw ParseError(name, line_no, "weighted METIS graphs are not supported");

    std::vector<Edge> edges;
    edges.reserve(declared_m);
    // Directed mentions, encoded for a sort-based symmetry check afterwards.
    std::vector<std::uint64_t> mentions;
    mentions.reserve(2 * declared_m);
    for (Count v = 0; v < n; ++v) {
        std::string body;
        if (!next_content_line(body))
            throw ParseError(name, line_no, "fewer adjacency lines than declared n");
        for (Count w : parse_ints(body, name, line_no)) {
            if (w < 1 || w > n)
                throw ParseError(name, line_no, "neighbor id outside 1..n");
            Count u = w - 1;
            if (u == v)
                throw ParseError(name, line_no, "self-loop in METIS adjacency");
            mentions.push_back(static_cast<std::uint64_t>(v) << 32 |
                               static_cast<std::uint64_t>(u));
            if (u > v)
                edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(u)});
        }
    }
    std::string rest;
    while (next_content_line(rest))
        if (!parse_ints(rest, name, line_no).empty())
            throw ParseError(name, line_no, "more adjacency lines than declared n");

    if (static_cast<Count>(mentions.size()) != 2 * declared_m)
        throw ParseError(name, line_no,
                         "METIS header declares " + std::to_string(declared_m) +
                             " edges but adjacency lists mention " +
                             std::to_string(mentions.size()) + " endpoints");
    std::sort(mentions.begin(), mentions.end());
    if (std::adjacent_find(mentions.begin(), mentions.end()) != mentions.end())
        throw ParseError(name, line_no, "duplicate neighbor in METIS adjacency");
    for (std::uint64_t mention : mentions) {
        std::uint64_t reversed = mention << 32 | mention >> 32;
        if (!std::binary_search(mentions.begin(), mentions.end(), reversed))
            throw ParseError(name, line_no, "asymmetric METIS adjacency");
    }

    LoadResult result;
    result.graph = Graph::from_edges(n, edges);
    if (result.graph.edge_count() != declared_m)
        throw ParseError(name, line_no, "METIS adjacency is inconsistent with header");
    return result;
}

LoadResult load_metis(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return load_metis(in, path);
}

LoadResult load_graph(const std::string& path, GraphFormat format, int index_base,
                      std::optional<Count> declared_n) {
    return format == GraphFormat::metis ? load_metis(path)
                                        : load_edge_list(path, index_base, declared_n);
}

void write_metis(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (Count v = 0; v < g.vertex_count(); ++v) {
        bool first = true;
        for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
            if (!first)
                out << ' ';
            out << w + 1;
            first = false;
        }
        out << '\n';
    }
}

void write_edge_list(std::ostream& out, const Graph& g, int index_base) {
    for (const Edge& e : g.edges())
        out << e.u + index_base << ' ' << e.v + index_base << '\n';
}

void write_graph(const std::string& path, const Graph& g, GraphFormat format, int index_base) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    if (format == GraphFormat::metis)
        write_metis(out, g);
    else
        write_edge_list(out, g, index_base);
}

EdgeInsertionSet load_edge_set(const std::string& path, int index_base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    EdgeInsertionSet s;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = strip_comment(line, '#');
        std::vector<Count> values = parse_ints(body, path, line_no);
        if (values.empty())
            continue;
        if (values.size() != 2)
            throw ParseError(path, line_no, "expected exactly two vertex ids");
        Count u = values[0] - index_base;
        Count v = values[1] - index_base;
        if (u < 0 || v < 0)
            throw ParseError(path, line_no, "vertex id below index base");
        s.edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
    }
    return s;
}

void write_edge_set(std::ostream& out, const EdgeInsertionSet& s, int index_base) {
    for (const Edge& e : s.edges)
        out << e.u + index_base << ' ' << e.v + index_base << '\n';
}

} // namespace kanon
