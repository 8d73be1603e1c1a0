#include <graphhaus/subiso.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <string>

namespace graphhaus::subiso
{
    namespace
    {
        /// Pattern vertices in matching order: start from a maximum-degree
        /// vertex, then repeatedly take the vertex with most already-ordered
        /// neighbours (ties by degree, then index).
        auto pattern_order(const Graph & pattern) -> std::vector<Vertex>
        {
            int n = pattern.order();
            std::vector<Vertex> order;
            std::vector<int> links(n, 0);
            VertexSet placed;
            for (int step = 0 ; step < n ; ++step) {
                int best = -1;
                for (int v = 0 ; v < n ; ++v) {
                    if (placed.test(v))
                        continue;
                    if (best == -1 || links[v] > links[best]
                            || (links[v] == links[best] && pattern.degree(v) > pattern.degree(best)))
                        best = v;
                }
                order.push_back(best);
                placed.set(best);
                pattern.neighbours(best).for_each([&] (int w) { ++links[w]; });
            }
            return order;
        }

        class Matcher
        {
        public:
            Matcher(const Graph & pattern, const Graph & target, Mode mode, const Deadline & deadline) :
                _p(pattern), _t(target), _mode(mode), _deadline(deadline),
                _order(pattern_order(pattern)),
                _core_p(pattern.order(), -1), _core_t(target.order(), -1)
            {
                _target_by_degree.resize(target.order());
                for (int v = 0 ; v < target.order() ; ++v)
                    _target_by_degree[v] = v;
                std::stable_sort(_target_by_degree.begin(), _target_by_degree.end(),
                        [&] (int a, int b) { return target.degree(a) > target.degree(b); });
            }

            auto run() -> bool
            {
                return extend(0, VertexSet{}, VertexSet{}, VertexSet{}, VertexSet{});
            }

            auto mapping() const -> const std::vector<Vertex> & { return _core_p; }
            auto states() const -> std::uint64_t { return _states; }

        private:
            auto extend(int depth, const VertexSet & mapped_p, const VertexSet & mapped_t,
                    const VertexSet & term_p, const VertexSet & term_t) -> bool
            {
                ++_states;
                _deadline.tick();

                if (depth == _p.order())
                    return true;

                Vertex u = _order[depth];
                const auto & nu = _p.neighbours(u);
                bool in_terminal = term_p.test(u);

                VertexSet candidates = _t.vertices() - mapped_t;
                if (in_terminal) {
                    // any mapped neighbour's image must be adjacent to u's image
                    int w = (nu & mapped_p).first();
                    candidates &= _t.neighbours(_core_p[w]);
                }
                else if (_mode == Mode::induced)
                    candidates -= term_t;

                if (candidates.empty())
                    return false;

                int mapped_nbrs_p = nu.intersection_count(mapped_p);
                VertexSet nu_terminal = (nu & term_p) - mapped_p;
                int term_count_p = nu_terminal.count();
                int free_count_p = (nu - mapped_p - term_p).count();
                int unmapped_count_p = (nu - mapped_p).count();
                int degree_p = _p.degree(u);

                for (Vertex x : _target_by_degree) {
                    if (! candidates.test(x))
                        continue;
                    const auto & nx = _t.neighbours(x);
                    if (_t.degree(x) < degree_p)
                        continue;
                    if (! feasible(u, x, mapped_p, mapped_t, mapped_nbrs_p))
                        continue;

                    int term_count_t = ((nx & term_t) - mapped_t).count();
                    if (term_count_p > term_count_t)
                        continue;
                    if (_mode == Mode::induced) {
                        if (free_count_p > (nx - mapped_t - term_t).count())
                            continue;
                    }
                    else if (unmapped_count_p > (nx - mapped_t).count())
                        continue;

                    _core_p[u] = x;
                    _core_t[x] = u;

                    VertexSet next_mapped_p = mapped_p, next_mapped_t = mapped_t;
                    next_mapped_p.set(u);
                    next_mapped_t.set(x);
                    VertexSet next_term_p = (term_p | nu) - next_mapped_p;
                    VertexSet next_term_t = (term_t | nx) - next_mapped_t;

                    if (extend(depth + 1, next_mapped_p, next_mapped_t, next_term_p, next_term_t))
                        return true;

                    _core_p[u] = -1;
                    _core_t[x] = -1;
                }
                return false;
            }

            auto feasible(Vertex u, Vertex x, const VertexSet & mapped_p, const VertexSet & mapped_t,
                    int mapped_nbrs_p) const -> bool
            {
                const auto & nx = _t.neighbours(x);
                bool ok = true;
                (_p.neighbours(u) & mapped_p).for_each([&] (int w) {
                    if (ok && ! nx.test(_core_p[w]))
                        ok = false;
                });
                if (! ok)
                    return false;
                // with every mapped pattern neighbour landing on a target
                // neighbour, equal counts means no extra target edges
                if (_mode == Mode::induced && nx.intersection_count(mapped_t) != mapped_nbrs_p)
                    return false;
                return true;
            }

            const Graph & _p;
            const Graph & _t;
            Mode _mode;
            const Deadline & _deadline;
            std::vector<Vertex> _order;
            std::vector<Vertex> _target_by_degree;
            std::vector<Vertex> _core_p, _core_t;
            std::uint64_t _states = 0;
        };
    }

    auto parse_mode(std::string_view text) -> Mode
    {
        if (text == "induced")
            return Mode::induced;
        if (text == "subgraph")
            return Mode::subgraph;
        throw Error(ErrorCode::invalid_argument, "unknown subgraph mode '" + std::string(text) + "'");
    }

    auto to_string(Mode mode) -> std::string_view
    {
        return mode == Mode::induced ? "induced" : "subgraph";
    }

    auto find_embedding(const Graph & pattern, const Graph & target, Mode mode, const Deadline & deadline) -> MatchOutcome
    {
        if (pattern.order() > target.order() || pattern.size() > target.size())
            return MatchOutcome{MatchStatus::not_found, {}, 0};

        Matcher matcher(pattern, target, mode, deadline);
        try {
            if (matcher.run())
                return MatchOutcome{MatchStatus::found, matcher.mapping(), matcher.states()};
            return MatchOutcome{MatchStatus::not_found, {}, matcher.states()};
        }
        catch (const Timeout &) {
            return MatchOutcome{MatchStatus::timed_out, {}, matcher.states()};
        }
    }

    auto contains(const Graph & pattern, const Graph & target, Mode mode, const Deadline & deadline) -> Containment
    {
        switch (find_embedding(pattern, target, mode, deadline).status) {
            case MatchStatus::found: return Containment::yes;
            case MatchStatus::not_found: return Containment::no;
            case MatchStatus::timed_out: return Containment::unknown;
        }
        return Containment::unknown;
    }

    auto verify_embedding(const Graph & pattern, const Graph & target, Mode mode, const std::vector<Vertex> & mapping) -> bool
    {
        if (static_cast<int>(mapping.size()) != pattern.order())
            return false;
        std::vector<bool> used(target.order(), false);
        for (auto x : mapping) {
            if (x < 0 || x >= target.order() || used[x])
                return false;
            used[x] = true;
        }
        for (int a = 0 ; a < pattern.order() ; ++a)
            for (int b = a + 1 ; b < pattern.order() ; ++b) {
                bool pe = pattern.adjacent(a, b), te = target.adjacent(mapping[a], mapping[b]);
                if (pe && ! te)
                    return false;
                if (mode == Mode::induced && te && ! pe)
                    return false;
            }
        return true;
    }
}
