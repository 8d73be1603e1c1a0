#include <graphhaus/invariants.hpp>

#include <algorithm>
#include <vector>

namespace graphhaus::invariants::solvers
{
    namespace
    {
        /// Distances from root by breadth-first search; -1 for unreachable.
        auto bfs_distances(const Graph & g, Vertex root) -> std::vector<int>
        {
            std::vector<int> dist(g.order(), -1);
            VertexSet frontier, seen;
            frontier.set(root);
            seen.set(root);
            dist[root] = 0;
            for (int level = 1 ; ! frontier.empty() ; ++level) {
                VertexSet next;
                frontier.for_each([&] (int v) { next |= g.neighbours(v); });
                next -= seen;
                next.for_each([&] (int v) { dist[v] = level; });
                seen |= next;
                frontier = next;
            }
            return dist;
        }

        auto component_of(const Graph & g, Vertex root) -> VertexSet
        {
            VertexSet frontier, seen;
            frontier.set(root);
            seen.set(root);
            while (! frontier.empty()) {
                VertexSet next;
                frontier.for_each([&] (int v) { next |= g.neighbours(v); });
                next -= seen;
                seen |= next;
                frontier = next;
            }
            return seen;
        }
    }

    auto is_connected(const Graph & g) -> bool
    {
        return component_of(g, 0).count() == g.order();
    }

    auto number_of_components(const Graph & g) -> int
    {
        VertexSet left = g.vertices();
        int count = 0;
        while (! left.empty()) {
            left -= component_of(g, left.first());
            ++count;
        }
        return count;
    }

    auto is_bipartite(const Graph & g) -> bool
    {
        std::vector<int> side(g.order(), -1);
        std::vector<Vertex> queue;
        for (Vertex s = 0 ; s < g.order() ; ++s) {
            if (side[s] != -1)
                continue;
            side[s] = 0;
            queue.assign(1, s);
            for (std::size_t head = 0 ; head < queue.size() ; ++head) {
                Vertex v = queue[head];
                bool ok = true;
                g.neighbours(v).for_each([&] (int w) {
                    if (side[w] == -1) {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    }
                    else if (side[w] == side[v])
                        ok = false;
                });
                if (! ok)
                    return false;
            }
        }
        return true;
    }

    auto eccentricities(const Graph & g) -> std::optional<std::vector<int>>
    {
        std::vector<int> ecc(g.order(), 0);
        for (Vertex v = 0 ; v < g.order() ; ++v) {
            auto dist = bfs_distances(g, v);
            for (int d : dist) {
                if (d < 0)
                    return std::nullopt;
                ecc[v] = std::max(ecc[v], d);
            }
        }
        return ecc;
    }

    auto girth(const Graph & g) -> std::optional<int>
    {
        int best = -1;
        std::vector<int> dist(g.order()), parent(g.order());
        std::vector<Vertex> queue;
        for (Vertex root = 0 ; root < g.order() ; ++root) {
            std::fill(dist.begin(), dist.end(), -1);
            dist[root] = 0;
            parent[root] = -1;
            queue.assign(1, root);
            for (std::size_t head = 0 ; head < queue.size() ; ++head) {
                Vertex v = queue[head];
                if (best != -1 && 2 * dist[v] + 1 >= best)
                    break;
                g.neighbours(v).for_each([&] (int w) {
                    if (dist[w] == -1) {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                    else if (w != parent[v]) {
                        int length = dist[v] + dist[w] + 1;
                        if (best == -1 || length < best)
                            best = length;
                    }
                });
            }
        }
        if (best == -1)
            return std::nullopt;
        return best;
    }

    auto number_of_triangles(const Graph & g) -> long long
    {
        long long count = 0;
        for (auto [u, v] : g.edges()) {
            VertexSet common = g.neighbours(u) & g.neighbours(v);
            common -= VertexSet::first_n(v + 1);
            count += common.count();
        }
        return count;
    }
}
