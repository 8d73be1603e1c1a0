#ifndef GRAPHHAUS_FORMATS_HPP
#define GRAPHHAUS_FORMATS_HPP

#include <graphhaus/graph.hpp>

#include <string>
#include <string_view>

namespace graphhaus
{
    /// graph6: order header, then the upper triangle in column order packed
    /// six bits per byte, each byte offset by 63.
    auto to_graph6(const Graph & g) -> std::string;

    /// Strict inverse of to_graph6: rejects non-minimal headers, trailing
    /// bytes and nonzero padding.
    auto from_graph6(std::string_view text) -> Graph;

    /// n lines of n entries, each 0 or 1; whitespace between entries optional.
    auto from_adjacency_matrix(std::string_view text) -> Graph;
    auto to_adjacency_matrix(const Graph & g) -> std::string;

    /// Lines "u v" with 0-based endpoints. An optional first line "n=<k>"
    /// fixes the order; otherwise it is one more than the largest endpoint.
    auto from_edge_list(std::string_view text) -> Graph;
    auto to_edge_list(const Graph & g) -> std::string;

    enum class GraphFormat
    {
        graph6,
        adjacency_matrix,
        edge_list
    };

    /// Accepts "graph6", "adjacency_matrix" / "adjacency-matrix", "edge_list" / "edge-list".
    auto parse_format_name(std::string_view name) -> GraphFormat;
    auto parse_graph(GraphFormat format, std::string_view text) -> Graph;
}

#endif
