#include <graphhaus/invariants.hpp>

#include <vector>

namespace graphhaus::invariants::solvers
{
    namespace
    {
        /// Maximum clique by branch and bound: candidates are greedily
        /// coloured, and a branch is cut once size + colour cannot beat the
        /// incumbent.
        class MaxClique
        {
        public:
            MaxClique(const Graph & g, const Deadline & deadline) : _g(g), _deadline(deadline) {}

            auto run() -> int
            {
                if (_g.order() == 0)
                    return 0;
                _best = 1;
                expand(_g.vertices(), 0);
                return _best;
            }

        private:
            auto colour_order(const VertexSet & p, std::vector<int> & order, std::vector<int> & bound) const -> void
            {
                VertexSet uncoloured = p;
                int colour = 0;
                while (! uncoloured.empty()) {
                    ++colour;
                    VertexSet q = uncoloured;
                    while (! q.empty()) {
                        int v = q.first();
                        q.reset(v);
                        q -= _g.neighbours(v);
                        uncoloured.reset(v);
                        order.push_back(v);
                        bound.push_back(colour);
                    }
                }
            }

            auto expand(VertexSet p, int size) -> void
            {
                _deadline.tick();
                std::vector<int> order, bound;
                colour_order(p, order, bound);
                for (int i = static_cast<int>(order.size()) - 1 ; i >= 0 ; --i) {
                    if (size + bound[i] <= _best)
                        return;
                    int v = order[i];
                    VertexSet next = p & _g.neighbours(v);
                    if (next.empty()) {
                        if (size + 1 > _best)
                            _best = size + 1;
                    }
                    else
                        expand(next, size + 1);
                    p.reset(v);
                }
            }

            const Graph & _g;
            const Deadline & _deadline;
            int _best = 0;
        };
    }

    auto clique_number(const Graph & g, const Deadline & deadline) -> int
    {
        return MaxClique(g, deadline).run();
    }

    auto independence_number(const Graph & g, const Deadline & deadline) -> int
    {
        return clique_number(complement(g), deadline);
    }
}
