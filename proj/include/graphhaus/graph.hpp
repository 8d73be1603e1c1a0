#ifndef GRAPHHAUS_GRAPH_HPP
#define GRAPHHAUS_GRAPH_HPP

#include <graphhaus/bitset.hpp>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace graphhaus
{
    using Vertex = int;
    using Edge = std::pair<Vertex, Vertex>;

    inline constexpr int max_order = 250;

    /// Simple undirected graph on 1..250 vertices. Immutable once built;
    /// use GraphBuilder to assemble one edge at a time.
    class Graph
    {
    public:
        /// Duplicate edges collapse. Throws Error on an out-of-range order,
        /// a loop, or an endpoint outside [0, order).
        Graph(int order, std::span<const Edge> edges);
        Graph(int order, std::initializer_list<Edge> edges);

        static auto edgeless(int order) -> Graph;
        static auto complete(int order) -> Graph;
        static auto cycle(int order) -> Graph;
        static auto path(int order) -> Graph;
        static auto petersen() -> Graph;

        auto order() const -> int { return static_cast<int>(_rows.size()); }
        auto size() const -> int { return _size; }

        auto adjacent(Vertex u, Vertex v) const -> bool { return _rows[u].test(v); }
        auto neighbours(Vertex v) const -> const VertexSet & { return _rows[v]; }
        auto degree(Vertex v) const -> int { return _rows[v].count(); }
        auto vertices() const -> VertexSet { return VertexSet::first_n(order()); }

        /// Edges (u, v) with u < v, sorted by (u, v).
        auto edges() const -> std::vector<Edge>;

        /// The graph with vertex v renamed to new_label[v]; new_label must
        /// be a permutation of [0, order).
        auto relabelled(std::span<const Vertex> new_label) const -> Graph;

        auto operator==(const Graph &) const -> bool = default;

    private:
        friend class GraphBuilder;
        Graph() = default;

        std::vector<VertexSet> _rows;
        int _size = 0;
    };

    class GraphBuilder
    {
    public:
        explicit GraphBuilder(int order);

        /// Idempotent; rejects loops and out-of-range endpoints.
        auto add_edge(Vertex u, Vertex v) -> GraphBuilder &;
        auto order() const -> int { return _graph.order(); }
        auto build() && -> Graph;

    private:
        Graph _graph;
    };

    /// Per-vertex positions in the unit square.
    struct Embedding
    {
        std::vector<std::pair<double, double>> positions;

        auto operator==(const Embedding &) const -> bool = default;
    };

    auto complement(const Graph & g) -> Graph;

    /// One vertex per edge of g, in edges() order; two vertices adjacent iff
    /// the edges share an endpoint. Throws order_out_of_range past 250 edges.
    auto line_graph(const Graph & g) -> Graph;

    auto is_permutation_of_order(std::span<const Vertex> perm, int order) -> bool;
}

#endif
