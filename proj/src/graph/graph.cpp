#include <graphhaus/graph.hpp>
#include <graphhaus/error.hpp>

#include <string>

namespace graphhaus
{
    namespace
    {
        auto check_order(int order) -> void
        {
            if (order < 1 || order > max_order)
                throw Error(ErrorCode::order_out_of_range,
                        "order " + std::to_string(order) + " outside 1.." + std::to_string(max_order));
        }
    }

    GraphBuilder::GraphBuilder(int order)
    {
        check_order(order);
        _graph._rows.resize(order);
    }

    auto GraphBuilder::add_edge(Vertex u, Vertex v) -> GraphBuilder &
    {
        int n = _graph.order();
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error(ErrorCode::vertex_out_of_range,
                    "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") outside [0, " + std::to_string(n) + ")");
        if (u == v)
            throw Error(ErrorCode::loop_rejected, "loop at vertex " + std::to_string(u));
        if (! _graph._rows[u].test(v)) {
            _graph._rows[u].set(v);
            _graph._rows[v].set(u);
            ++_graph._size;
        }
        return *this;
    }

    auto GraphBuilder::build() && -> Graph
    {
        return std::move(_graph);
    }

    Graph::Graph(int order, std::span<const Edge> edges)
    {
        GraphBuilder b(order);
        for (auto [u, v] : edges)
            b.add_edge(u, v);
        *this = std::move(b).build();
    }

    Graph::Graph(int order, std::initializer_list<Edge> edges) :
        Graph(order, std::span<const Edge>(edges.begin(), edges.size()))
    {
    }

    auto Graph::edgeless(int order) -> Graph
    {
        return GraphBuilder(order).build() ;
    }

    auto Graph::complete(int order) -> Graph
    {
        GraphBuilder b(order);
        for (int v = 1 ; v < order ; ++v)
            for (int u = 0 ; u < v ; ++u)
                b.add_edge(u, v);
        return std::move(b).build();
    }

    auto Graph::cycle(int order) -> Graph
    {
        GraphBuilder b(order);
        if (order >= 3)
            for (int v = 0 ; v < order ; ++v)
                b.add_edge(v, (v + 1) % order);
        else if (order == 2)
            b.add_edge(0, 1);
        return std::move(b).build();
    }

    auto Graph::path(int order) -> Graph
    {
        GraphBuilder b(order);
        for (int v = 0 ; v + 1 < order ; ++v)
            b.add_edge(v, v + 1);
        return std::move(b).build();
    }

    auto Graph::petersen() -> Graph
    {
        GraphBuilder b(10);
        for (int i = 0 ; i < 5 ; ++i) {
            b.add_edge(i, (i + 1) % 5);
            b.add_edge(i, i + 5);
            b.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        return std::move(b).build();
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(_size);
        for (int u = 0 ; u < order() ; ++u)
            for (int v = _rows[u].next(u) ; v < VertexSet::capacity ; v = _rows[u].next(v))
                result.emplace_back(u, v);
        return result;
    }

    auto Graph::relabelled(std::span<const Vertex> new_label) const -> Graph
    {
        if (! is_permutation_of_order(new_label, order()))
            throw Error(ErrorCode::invalid_argument, "relabelling is not a permutation of the vertex set");
        Graph result;
        result._rows.resize(_rows.size());
        result._size = _size;
        for (int u = 0 ; u < order() ; ++u)
            _rows[u].for_each([&] (int v) { result._rows[new_label[u]].set(new_label[v]); });
        return result;
    }

    auto is_permutation_of_order(std::span<const Vertex> perm, int order) -> bool
    {
        if (static_cast<int>(perm.size()) != order)
            return false;
        std::vector<bool> seen(order, false);
        for (auto v : perm) {
            if (v < 0 || v >= order || seen[v])
                return false;
            seen[v] = true;
        }
        return true;
    }

    auto complement(const Graph & g) -> Graph
    {
        GraphBuilder b(g.order());
        for (int v = 1 ; v < g.order() ; ++v)
            for (int u = 0 ; u < v ; ++u)
                if (! g.adjacent(u, v))
                    b.add_edge(u, v);
        return std::move(b).build();
    }

    auto line_graph(const Graph & g) -> Graph
    {
        auto edges = g.edges();
        if (edges.empty() || static_cast<int>(edges.size()) > max_order)
            throw Error(ErrorCode::order_out_of_range,
                    "line graph would have " + std::to_string(edges.size()) + " vertices");

        GraphBuilder b(static_cast<int>(edges.size()));
        for (std::size_t i = 0 ; i < edges.size() ; ++i)
            for (std::size_t j = i + 1 ; j < edges.size() ; ++j) {
                auto [a, c] = edges[i];
                auto [x, y] = edges[j];
                if (a == x || a == y || c == x || c == y)
                    b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
            }
        return std::move(b).build();
    }
}
