#include <graphhaus/invariants.hpp>
#include <graphhaus/subiso.hpp>

#include <algorithm>
#include <vector>

namespace graphhaus::invariants::solvers
{
    namespace
    {
        auto reachable_within(const Graph & g, Vertex from, const VertexSet & allowed) -> VertexSet
        {
            VertexSet seen, frontier;
            frontier.set(from);
            seen.set(from);
            while (! frontier.empty()) {
                VertexSet next;
                frontier.for_each([&] (int v) { next |= g.neighbours(v); });
                next &= allowed;
                next -= seen;
                seen |= next;
                frontier = next;
            }
            return seen;
        }

        class HamiltonCycle
        {
        public:
            HamiltonCycle(const Graph & g, const Deadline & deadline) : _g(g), _deadline(deadline) {}

            auto run() -> bool
            {
                VertexSet unvisited = _g.vertices();
                unvisited.reset(0);
                return extend(0, unvisited);
            }

        private:
            auto extend(Vertex end, const VertexSet & unvisited) -> bool
            {
                _deadline.tick();
                if (unvisited.empty())
                    return _g.adjacent(end, 0);

                VertexSet open = unvisited;
                open.set(end);
                open.set(0);
                bool dead = false;
                unvisited.for_each([&] (int u) {
                    if (! dead && _g.neighbours(u).intersection_count(open) < 2)
                        dead = true;
                });
                if (dead)
                    return false;
                VertexSet reach = reachable_within(_g, end, unvisited);
                if (reach.intersection_count(unvisited) != unvisited.count())
                    return false;

                std::vector<std::pair<int, Vertex>> moves;
                (_g.neighbours(end) & unvisited).for_each([&] (int w) {
                    moves.emplace_back(_g.neighbours(w).intersection_count(unvisited), w);
                });
                std::sort(moves.begin(), moves.end());
                for (auto [options, w] : moves) {
                    VertexSet rest = unvisited;
                    rest.reset(w);
                    if (extend(w, rest))
                        return true;
                }
                return false;
            }

            const Graph & _g;
            const Deadline & _deadline;
        };

        /// Longest cycle by enumerating paths from each vertex s through
        /// larger vertices only, so every cycle is found from its minimum.
        class LongestCycle
        {
        public:
            LongestCycle(const Graph & g, const Deadline & deadline) : _g(g), _deadline(deadline) {}

            auto run() -> int
            {
                int n = _g.order();
                for (Vertex s = 0 ; s < n && n - s > _best ; ++s) {
                    _start = s;
                    VertexSet allowed = _g.vertices() - VertexSet::first_n(s + 1);
                    extend(s, 1, allowed);
                    if (_best == n)
                        break;
                }
                return _best;
            }

        private:
            auto extend(Vertex end, int length, const VertexSet & allowed) -> void
            {
                _deadline.tick();
                if (length >= 3 && _g.adjacent(end, _start))
                    _best = std::max(_best, length);
                int potential = length + (reachable_within(_g, end, allowed).count() - 1);
                if (potential <= _best)
                    return;
                (_g.neighbours(end) & allowed).for_each([&] (int w) {
                    VertexSet rest = allowed;
                    rest.reset(w);
                    extend(w, length + 1, rest);
                });
            }

            const Graph & _g;
            const Deadline & _deadline;
            Vertex _start = 0;
            int _best = 0;
        };

        /// Edmonds' blossom algorithm for maximum cardinality matching.
        class BlossomMatching
        {
        public:
            BlossomMatching(const Graph & g, const Deadline & deadline) :
                _g(g), _deadline(deadline), _n(g.order()),
                _match(_n, -1), _parent(_n), _base(_n), _used(_n), _blossom(_n)
            {
            }

            auto run() -> int
            {
                int pairs = 0;
                for (Vertex v = 0 ; v < _n ; ++v) {
                    if (_match[v] != -1)
                        continue;
                    for (int u = find_path(v) ; u != -1 ; ) {
                        int pu = _parent[u], next = _match[pu];
                        _match[u] = pu;
                        _match[pu] = u;
                        u = next;
                    }
                    if (_match[v] != -1)
                        ++pairs;
                }
                return pairs;
            }

        private:
            auto lowest_common_base(int a, int b) -> int
            {
                std::vector<bool> seen(_n, false);
                for (;;) {
                    a = _base[a];
                    seen[a] = true;
                    if (_match[a] == -1)
                        break;
                    a = _parent[_match[a]];
                }
                for (;;) {
                    b = _base[b];
                    if (seen[b])
                        return b;
                    b = _parent[_match[b]];
                }
            }

            auto mark_path(int v, int b, int child) -> void
            {
                while (_base[v] != b) {
                    _blossom[_base[v]] = true;
                    _blossom[_base[_match[v]]] = true;
                    _parent[v] = child;
                    child = _match[v];
                    v = _parent[_match[v]];
                }
            }

            auto find_path(int root) -> int
            {
                std::fill(_used.begin(), _used.end(), false);
                std::fill(_parent.begin(), _parent.end(), -1);
                for (int i = 0 ; i < _n ; ++i)
                    _base[i] = i;
                _used[root] = true;
                std::vector<int> queue{root};
                for (std::size_t head = 0 ; head < queue.size() ; ++head) {
                    _deadline.tick();
                    int v = queue[head];
                    for (int to = _g.neighbours(v).first() ; to < _n ; to = _g.neighbours(v).next(to)) {
                        if (_base[v] == _base[to] || _match[v] == to)
                            continue;
                        if (to == root || (_match[to] != -1 && _parent[_match[to]] != -1)) {
                            int b = lowest_common_base(v, to);
                            std::fill(_blossom.begin(), _blossom.end(), false);
                            mark_path(v, b, to);
                            mark_path(to, b, v);
                            for (int i = 0 ; i < _n ; ++i)
                                if (_blossom[_base[i]]) {
                                    _base[i] = b;
                                    if (! _used[i]) {
                                        _used[i] = true;
                                        queue.push_back(i);
                                    }
                                }
                        }
                        else if (_parent[to] == -1) {
                            _parent[to] = v;
                            if (_match[to] == -1)
                                return to;
                            _used[_match[to]] = true;
                            queue.push_back(_match[to]);
                        }
                    }
                }
                return -1;
            }

            const Graph & _g;
            const Deadline & _deadline;
            int _n;
            std::vector<int> _match, _parent, _base;
            std::vector<bool> _used, _blossom;
        };
    }

    auto is_hamiltonian(const Graph & g, const Deadline & deadline) -> bool
    {
        int n = g.order();
        if (n < 3 || ! is_connected(g))
            return false;
        for (Vertex v = 0 ; v < n ; ++v)
            if (g.degree(v) < 2)
                return false;
        return HamiltonCycle(g, deadline).run();
    }

    auto is_claw_free(const Graph & g, const Deadline & deadline) -> bool
    {
        static const Graph claw(4, {{0, 1}, {0, 2}, {0, 3}});
        switch (subiso::contains(claw, g, subiso::Mode::induced, deadline)) {
            case subiso::Containment::yes: return false;
            case subiso::Containment::no: return true;
            case subiso::Containment::unknown: break;
        }
        throw Timeout{};
    }

    auto circumference(const Graph & g, const Deadline & deadline) -> std::optional<int>
    {
        int best = LongestCycle(g, deadline).run();
        if (best == 0)
            return std::nullopt;
        return best;
    }

    auto matching_number(const Graph & g, const Deadline & deadline) -> int
    {
        return BlossomMatching(g, deadline).run();
    }
}
