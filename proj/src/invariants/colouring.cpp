#include <graphhaus/invariants.hpp>

#include <algorithm>
#include <vector>

namespace graphhaus::invariants::solvers
{
    namespace
    {
        /// Vertex colouring by DSATUR branch and bound. Each step colours the
        /// uncoloured vertex of highest saturation (ties: most uncoloured
        /// neighbours, then lowest index); at most one fresh colour is tried
        /// per step, which removes colour-permutation symmetry.
        class Dsatur
        {
        public:
            Dsatur(const Graph & g, const Deadline & deadline) :
                _g(g), _deadline(deadline), _n(g.order()),
                _colour(_n, -1), _neighbour_colours(_n, std::vector<int>(_n + 1, 0)), _saturation(_n, 0)
            {
            }

            auto greedy() -> int
            {
                int used = 0;
                for (int coloured = 0 ; coloured < _n ; ++coloured) {
                    int v = select();
                    int c = 0;
                    while (_neighbour_colours[v][c] > 0)
                        ++c;
                    assign(v, c);
                    used = std::max(used, c + 1);
                }
                for (int v = 0 ; v < _n ; ++v)
                    unassign(v);
                return used;
            }

            auto solve(int lower, int upper) -> int
            {
                _lower = lower;
                _best = upper;
                search(0, 0);
                return _best;
            }

        private:
            auto select() const -> int
            {
                int best = -1, best_degree = -1;
                for (int v = 0 ; v < _n ; ++v) {
                    if (_colour[v] != -1)
                        continue;
                    if (best != -1 && _saturation[v] < _saturation[best])
                        continue;
                    int degree = 0;
                    _g.neighbours(v).for_each([&] (int w) { degree += _colour[w] == -1; });
                    if (best == -1 || _saturation[v] > _saturation[best] || degree > best_degree) {
                        best = v;
                        best_degree = degree;
                    }
                }
                return best;
            }

            auto assign(int v, int c) -> void
            {
                _colour[v] = c;
                _g.neighbours(v).for_each([&] (int w) {
                    if (_neighbour_colours[w][c]++ == 0)
                        ++_saturation[w];
                });
            }

            auto unassign(int v) -> void
            {
                int c = _colour[v];
                _colour[v] = -1;
                _g.neighbours(v).for_each([&] (int w) {
                    if (--_neighbour_colours[w][c] == 0)
                        --_saturation[w];
                });
            }

            /// Returns true once a colouring matching the lower bound exists.
            auto search(int coloured, int used) -> bool
            {
                _deadline.tick();
                if (coloured == _n) {
                    _best = used;
                    return _best == _lower;
                }
                int v = select();
                for (int c = 0 ; c <= used && c < _best - 1 ; ++c) {
                    if (_neighbour_colours[v][c] > 0)
                        continue;
                    assign(v, c);
                    bool done = search(coloured + 1, std::max(used, c + 1));
                    unassign(v);
                    if (done)
                        return true;
                }
                return false;
            }

            const Graph & _g;
            const Deadline & _deadline;
            int _n;
            std::vector<int> _colour;
            std::vector<std::vector<int>> _neighbour_colours;
            std::vector<int> _saturation;
            int _lower = 0;
            int _best = 0;
        };

        /// Backtracking test for a proper edge colouring with k colours.
        /// The edges at one maximum-degree vertex are fixed to distinct
        /// colours up front; afterwards the most constrained edge goes next.
        class EdgeColouring
        {
        public:
            EdgeColouring(const Graph & g, int k, const Deadline & deadline) :
                _g(g), _k(k), _deadline(deadline), _edges(g.edges()),
                _colour(_edges.size(), -1), _used(g.order())
            {
            }

            auto run() -> bool
            {
                Vertex hub = 0;
                for (Vertex v = 0 ; v < _g.order() ; ++v)
                    if (_g.degree(v) > _g.degree(hub))
                        hub = v;
                int next = 0, fixed = 0;
                for (std::size_t e = 0 ; e < _edges.size() ; ++e)
                    if (_edges[e].first == hub || _edges[e].second == hub) {
                        assign(e, next++);
                        ++fixed;
                    }
                return search(_edges.size() - fixed);
            }

        private:
            auto assign(std::size_t e, int c) -> void
            {
                _colour[e] = c;
                _used[_edges[e].first].set(c);
                _used[_edges[e].second].set(c);
            }

            auto unassign(std::size_t e) -> void
            {
                int c = _colour[e];
                _colour[e] = -1;
                _used[_edges[e].first].reset(c);
                _used[_edges[e].second].reset(c);
            }

            auto search(std::size_t remaining) -> bool
            {
                _deadline.tick();
                if (remaining == 0)
                    return true;
                std::size_t pick = _edges.size();
                int pick_saturation = -1;
                for (std::size_t e = 0 ; e < _edges.size() ; ++e) {
                    if (_colour[e] != -1)
                        continue;
                    int saturation = (_used[_edges[e].first] | _used[_edges[e].second]).count();
                    if (saturation > pick_saturation) {
                        pick = e;
                        pick_saturation = saturation;
                    }
                }
                if (pick_saturation >= _k)
                    return false;
                VertexSet blocked = _used[_edges[pick].first] | _used[_edges[pick].second];
                for (int c = 0 ; c < _k ; ++c) {
                    if (blocked.test(c))
                        continue;
                    assign(pick, c);
                    if (search(remaining - 1))
                        return true;
                    unassign(pick);
                }
                return false;
            }

            const Graph & _g;
            int _k;
            const Deadline & _deadline;
            std::vector<Edge> _edges;
            std::vector<int> _colour;
            std::vector<VertexSet> _used;
        };
    }

    auto chromatic_number(const Graph & g, const Deadline & deadline) -> int
    {
        if (g.size() == 0)
            return 1;
        int lower = clique_number(g, deadline);
        Dsatur dsatur(g, deadline);
        int upper = dsatur.greedy();
        if (lower == upper)
            return upper;
        return dsatur.solve(lower, upper);
    }

    auto chromatic_index(const Graph & g, const Deadline & deadline) -> int
    {
        int max_degree = 0;
        for (Vertex v = 0 ; v < g.order() ; ++v)
            max_degree = std::max(max_degree, g.degree(v));
        if (max_degree == 0)
            return 0;
        if (is_bipartite(g))
            return max_degree;
        // overfull: more edges than max_degree matchings can hold
        if (g.size() > max_degree * (g.order() / 2))
            return max_degree + 1;
        return EdgeColouring(g, max_degree, deadline).run() ? max_degree : max_degree + 1;
    }
}
