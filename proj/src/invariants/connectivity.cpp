#include <graphhaus/invariants.hpp>

#include <algorithm>
#include <vector>

namespace graphhaus::invariants::solvers
{
    namespace
    {
        /// Integral max-flow by breadth-first augmenting paths. All
        /// capacities here are small, so the path count bounds the work.
        class FlowNetwork
        {
        public:
            explicit FlowNetwork(int nodes) : _out(nodes) {}

            auto add_arc(int from, int to, int capacity) -> void
            {
                _out[from].push_back(static_cast<int>(_arcs.size()));
                _arcs.push_back(Arc{to, capacity, capacity});
                _out[to].push_back(static_cast<int>(_arcs.size()));
                _arcs.push_back(Arc{from, 0, 0});
            }

            /// Flow from s to t, stopping early once it reaches limit.
            auto max_flow(int s, int t, int limit, const Deadline & deadline) -> int
            {
                for (auto & arc : _arcs)
                    arc.residual = arc.capacity;
                int flow = 0;
                std::vector<int> via(_out.size());
                std::vector<int> queue;
                while (flow < limit) {
                    deadline.tick();
                    std::fill(via.begin(), via.end(), -1);
                    via[s] = -2;
                    queue.assign(1, s);
                    for (std::size_t head = 0 ; head < queue.size() && via[t] == -1 ; ++head) {
                        int v = queue[head];
                        for (int a : _out[v]) {
                            const auto & arc = _arcs[a];
                            if (arc.residual > 0 && via[arc.to] == -1) {
                                via[arc.to] = a;
                                queue.push_back(arc.to);
                            }
                        }
                    }
                    if (via[t] == -1)
                        break;
                    for (int v = t ; v != s ; ) {
                        int a = via[v];
                        --_arcs[a].residual;
                        ++_arcs[a ^ 1].residual;
                        v = _arcs[a ^ 1].to;
                    }
                    ++flow;
                }
                return flow;
            }

        private:
            struct Arc
            {
                int to;
                int capacity;
                int residual;
            };

            std::vector<std::vector<int>> _out;
            std::vector<Arc> _arcs;
        };

        auto minimum_degree(const Graph & g) -> int
        {
            int d = g.order();
            for (Vertex v = 0 ; v < g.order() ; ++v)
                d = std::min(d, g.degree(v));
            return d;
        }
    }

    auto vertex_connectivity(const Graph & g, const Deadline & deadline) -> int
    {
        int n = g.order();
        if (n == 1 || ! is_connected(g))
            return 0;
        if (g.size() == n * (n - 1) / 2)
            return n - 1;

        // vertex v splits into 2v (in) and 2v + 1 (out)
        FlowNetwork network(2 * n);
        for (Vertex v = 0 ; v < n ; ++v)
            network.add_arc(2 * v, 2 * v + 1, 1);
        for (auto [u, v] : g.edges()) {
            network.add_arc(2 * u + 1, 2 * v, n);
            network.add_arc(2 * v + 1, 2 * u, n);
        }

        // some vertex among the first best + 1 lies outside a minimum
        // separator and has a non-neighbour on the far side with a larger index
        int best = minimum_degree(g);
        for (Vertex s = 0 ; s <= best && s < n ; ++s)
            for (Vertex t = s + 1 ; t < n ; ++t) {
                if (g.adjacent(s, t))
                    continue;
                best = std::min(best, network.max_flow(2 * s + 1, 2 * t, best, deadline));
            }
        return best;
    }

    auto edge_connectivity(const Graph & g, const Deadline & deadline) -> int
    {
        int n = g.order();
        if (n == 1 || ! is_connected(g))
            return 0;
        FlowNetwork network(n);
        for (auto [u, v] : g.edges()) {
            network.add_arc(u, v, 1);
            network.add_arc(v, u, 1);
        }
        int best = minimum_degree(g);
        for (Vertex t = 1 ; t < n ; ++t)
            best = std::min(best, network.max_flow(0, t, best, deadline));
        return best;
    }
}
