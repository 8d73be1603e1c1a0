#include <graphhaus/canon.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>

namespace graphhaus::canon
{
    namespace
    {
        constexpr int no_jump = INT_MAX;

        /// Ordered partition of the vertex set. Cells are contiguous ranges
        /// of lab and are identified by their start position, which never
        /// changes once the cell exists.
        struct Partition
        {
            std::vector<int> lab;
            std::vector<int> cell_end;
            std::vector<int> cell_of;
            int cells = 1;

            explicit Partition(int n) :
                lab(n), cell_end(n, 0), cell_of(n, 0)
            {
                std::iota(lab.begin(), lab.end(), 0);
                cell_end[0] = n;
            }

            auto discrete() const -> bool { return cells == static_cast<int>(lab.size()); }
        };

        class Refiner
        {
        public:
            explicit Refiner(const Graph & g) : _g(g), _n(g.order()), _in_queue(g.order(), false) {}

            auto refine(Partition & p, std::deque<int> queue) -> void
            {
                std::fill(_in_queue.begin(), _in_queue.end(), false);
                for (int s : queue)
                    _in_queue[s] = true;

                std::vector<std::pair<int, int>> keyed;
                while (! queue.empty() && ! p.discrete()) {
                    int s = queue.front();
                    queue.pop_front();
                    _in_queue[s] = false;

                    VertexSet splitter;
                    for (int i = s ; i < p.cell_end[s] ; ++i)
                        splitter.set(p.lab[i]);

                    for (int x = 0 ; x < _n ; ) {
                        int e = p.cell_end[x];
                        if (e - x > 1)
                            split_cell(p, x, e, splitter, queue, keyed);
                        x = e;
                    }
                }
            }

        private:
            auto split_cell(Partition & p, int x, int e, const VertexSet & splitter,
                    std::deque<int> & queue, std::vector<std::pair<int, int>> & keyed) -> void
            {
                keyed.clear();
                bool uniform = true;
                for (int i = x ; i < e ; ++i) {
                    int v = p.lab[i];
                    int c = _g.neighbours(v).intersection_count(splitter);
                    keyed.emplace_back(c, v);
                    if (c != keyed.front().first)
                        uniform = false;
                }
                if (uniform)
                    return;

                std::sort(keyed.begin(), keyed.end());
                bool was_queued = _in_queue[x];
                int start = x;
                for (int i = x ; i < e ; ++i) {
                    auto [c, v] = keyed[i - x];
                    p.lab[i] = v;
                    if (i > x && c != keyed[i - x - 1].first) {
                        p.cell_end[start] = i;
                        if (start != x || ! was_queued)
                            enqueue(queue, start);
                        start = i;
                        ++p.cells;
                    }
                    p.cell_of[v] = start;
                }
                p.cell_end[start] = e;
                enqueue(queue, start);
            }

            auto enqueue(std::deque<int> & queue, int s) -> void
            {
                if (! _in_queue[s]) {
                    _in_queue[s] = true;
                    queue.push_back(s);
                }
            }

            const Graph & _g;
            int _n;
            std::vector<bool> _in_queue;
        };

        /// graph6 bit order: x(i, j) for j = 1..n-1, i = 0..j-1, packed
        /// most significant bit first so that word comparison is
        /// lexicographic comparison.
        auto leaf_bits(const Graph & g, const std::vector<int> & lab) -> std::vector<std::uint64_t>
        {
            int n = g.order();
            std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
            std::vector<std::uint64_t> bits((total + 63) / 64, 0);
            std::size_t k = 0;
            for (int j = 1 ; j < n ; ++j) {
                const auto & row = g.neighbours(lab[j]);
                for (int i = 0 ; i < j ; ++i, ++k)
                    if (row.test(lab[i]))
                        bits[k >> 6] |= std::uint64_t{1} << (63 - (k & 63));
            }
            return bits;
        }

        class UnionFind
        {
        public:
            explicit UnionFind(int n) : _parent(n)
            {
                std::iota(_parent.begin(), _parent.end(), 0);
            }

            auto find(int v) -> int
            {
                while (_parent[v] != v) {
                    _parent[v] = _parent[_parent[v]];
                    v = _parent[v];
                }
                return v;
            }

            auto unite(int a, int b) -> void
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    _parent[std::max(a, b)] = std::min(a, b);
            }

        private:
            std::vector<int> _parent;
        };

        class Search
        {
        public:
            Search(const Graph & g, const Deadline & deadline, Variant variant) :
                _g(g), _n(g.order()), _deadline(deadline), _variant(variant), _refiner(g)
            {
            }

            auto run() -> CanonResult
            {
                Partition root(_n);
                _refiner.refine(root, std::deque<int>{0});
                search(root, 0);

                std::vector<Vertex> relabelling(_n);
                for (int i = 0 ; i < _n ; ++i)
                    relabelling[_best_lab[i]] = i;
                return CanonResult{_g.relabelled(relabelling), std::move(relabelling), _group_order, _nodes};
            }

        private:
            auto search(const Partition & p, int level) -> int
            {
                ++_nodes;
                _deadline.tick();

                if (p.discrete())
                    return leaf(p);

                bool on_first_path = ! _have_first;

                int target = -1, target_size = INT_MAX;
                for (int x = 0 ; x < _n ; x = p.cell_end[x]) {
                    int size = p.cell_end[x] - x;
                    if (size > 1 && size < target_size) {
                        target = x;
                        target_size = size;
                    }
                }

                std::vector<int> children(p.lab.begin() + target, p.lab.begin() + p.cell_end[target]);
                std::sort(children.begin(), children.end());

                std::vector<int> explored;
                std::optional<UnionFind> orbits;
                std::size_t orbits_generators = 0;

                for (int w : children) {
                    if (! explored.empty()) {
                        if (! orbits || orbits_generators != _generators.size()) {
                            orbits = stabiliser_orbits();
                            orbits_generators = _generators.size();
                        }
                        int rw = orbits->find(w);
                        bool equivalent = std::any_of(explored.begin(), explored.end(),
                                [&] (int u) { return orbits->find(u) == rw; });
                        if (equivalent)
                            continue;
                    }

                    Partition child = p;
                    individualise(child, w);
                    _refiner.refine(child, std::deque<int>{child.cell_of[w]});

                    _path.push_back(w);
                    int jump = search(child, level + 1);
                    _path.pop_back();
                    explored.push_back(w);

                    if (jump < level)
                        return jump;
                }

                if (on_first_path) {
                    auto uf = stabiliser_orbits();
                    int rep = uf.find(_first_path[level]);
                    int orbit_size = 0;
                    for (int v = 0 ; v < _n ; ++v)
                        if (uf.find(v) == rep)
                            ++orbit_size;
                    _group_order *= orbit_size;
                }

                return no_jump;
            }

            static auto individualise(Partition & p, int w) -> void
            {
                int s = p.cell_of[w];
                int e = p.cell_end[s];
                auto it = std::find(p.lab.begin() + s, p.lab.begin() + e, w);
                std::rotate(p.lab.begin() + s, it, it + 1);
                p.cell_end[s] = s + 1;
                p.cell_end[s + 1] = e;
                for (int i = s + 1 ; i < e ; ++i)
                    p.cell_of[p.lab[i]] = s + 1;
                ++p.cells;
            }

            auto leaf(const Partition & p) -> int
            {
                auto bits = leaf_bits(_g, p.lab);
                if (! _have_first) {
                    _have_first = true;
                    _first_lab = _best_lab = p.lab;
                    _first_bits = _best_bits = std::move(bits);
                    _first_path = _best_path = _path;
                    return no_jump;
                }

                if (bits == _first_bits) {
                    record_automorphism(_first_lab, p.lab);
                    return common_prefix(_first_path);
                }
                if (bits == _best_bits) {
                    record_automorphism(_best_lab, p.lab);
                    return common_prefix(_best_path);
                }

                bool better = _variant == Variant::standard ? bits < _best_bits : bits > _best_bits;
                if (better) {
                    _best_lab = p.lab;
                    _best_bits = std::move(bits);
                    _best_path = _path;
                }
                return no_jump;
            }

            auto common_prefix(const std::vector<int> & other) const -> int
            {
                int k = 0;
                while (k < static_cast<int>(_path.size()) && k < static_cast<int>(other.size()) && _path[k] == other[k])
                    ++k;
                return k;
            }

            auto record_automorphism(const std::vector<int> & from, const std::vector<int> & to) -> void
            {
                std::vector<int> gamma(_n);
                bool identity = true;
                for (int i = 0 ; i < _n ; ++i) {
                    gamma[from[i]] = to[i];
                    if (from[i] != to[i])
                        identity = false;
                }
                if (! identity)
                    _generators.push_back(std::move(gamma));
            }

            /// Orbits of the group generated by the known automorphisms that
            /// fix every vertex on the current path.
            auto stabiliser_orbits() const -> UnionFind
            {
                UnionFind uf(_n);
                for (const auto & gamma : _generators) {
                    bool fixes = std::all_of(_path.begin(), _path.end(), [&] (int v) { return gamma[v] == v; });
                    if (fixes)
                        for (int v = 0 ; v < _n ; ++v)
                            uf.unite(v, gamma[v]);
                }
                return uf;
            }

            const Graph & _g;
            int _n;
            const Deadline & _deadline;
            Variant _variant;
            Refiner _refiner;

            std::vector<int> _path;
            bool _have_first = false;
            std::vector<int> _first_lab, _best_lab, _first_path, _best_path;
            std::vector<std::uint64_t> _first_bits, _best_bits;
            std::vector<std::vector<int>> _generators;
            BigInt _group_order = 1;
            std::uint64_t _nodes = 0;
        };
    }

    auto algorithm_version(Variant variant) -> int
    {
        switch (variant) {
            case Variant::standard: return 1;
            case Variant::reversed_tie_break: return 2;
        }
        return 0;
    }

    auto variant_for_version(int version) -> std::optional<Variant>
    {
        switch (version) {
            case 1: return Variant::standard;
            case 2: return Variant::reversed_tie_break;
        }
        return std::nullopt;
    }

    auto canonical_form(const Graph & g, const Deadline & deadline, Variant variant) -> std::optional<CanonResult>
    {
        try {
            Search search(g, deadline, variant);
            return search.run();
        }
        catch (const Timeout &) {
            return std::nullopt;
        }
    }

    auto canonical_key(const Graph & g, Variant variant) -> CanonicalKey
    {
        auto result = canonical_form(g, Deadline::never(), variant);
        return CanonicalKey{to_graph6(result->canonical_graph), algorithm_version(variant)};
    }

    auto are_isomorphic(const Graph & g, const Graph & h) -> bool
    {
        if (g.order() != h.order() || g.size() != h.size())
            return false;
        return canonical_key(g) == canonical_key(h);
    }

    auto automorphism_group_order(const Graph & g, const Deadline & deadline) -> std::optional<BigInt>
    {
        auto result = canonical_form(g, deadline);
        if (! result)
            return std::nullopt;
        return result->automorphism_group_order;
    }

    auto StabilityAudit::check(const StabilityRecord & record) -> bool
    {
        ++_report.checked;
        auto recomputed = canonical_key(record.graph, _variant);
        if (recomputed.key == record.stored.key)
            return true;
        _report.mismatches.push_back(StabilityMismatch{record.id, record.stored, std::move(recomputed)});
        return false;
    }

    auto verify_canonical_stability(const std::vector<StabilityRecord> & records, Variant variant) -> StabilityReport
    {
        StabilityAudit audit(variant);
        for (const auto & r : records)
            audit.check(r);
        return audit.report();
    }
}
