#include <graphhaus/invariants.hpp>
#include <graphhaus/canon.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace graphhaus::invariants
{
    namespace
    {
        using Solver = std::function<InvariantValue (const Graph &, const Deadline &)>;

        struct Entry
        {
            InvariantDescriptor descriptor;
            Solver solve;
        };

        auto degree_extremes(const Graph & g) -> std::pair<int, int>
        {
            int lo = g.order(), hi = 0;
            for (Vertex v = 0 ; v < g.order() ; ++v) {
                lo = std::min(lo, g.degree(v));
                hi = std::max(hi, g.degree(v));
            }
            return {lo, hi};
        }

        auto optional_value(std::optional<int> v) -> InvariantValue
        {
            return v ? InvariantValue::computed(*v) : InvariantValue::undefined();
        }

        auto entries() -> const std::vector<Entry> &
        {
            using enum Kind;
            using enum Hardness;
            namespace s = solvers;

            static const std::vector<Entry> table = [] {
                std::vector<Entry> t{
                    {{"automorphism_group_order", "Automorphism group order", integer, exponential},
                        [] (const Graph & g, const Deadline & d) {
                            auto order = canon::automorphism_group_order(g, d);
                            if (! order)
                                throw Timeout{};
                            return InvariantValue::computed(Rational(*order));
                        }},
                    {{"average_degree", "Average degree", rational, polynomial},
                        [] (const Graph & g, const Deadline &) {
                            return InvariantValue::computed(Rational(2 * g.size(), g.order()));
                        }},
                    {{"chromatic_index", "Chromatic index", integer, exponential},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::chromatic_index(g, d)); }},
                    {{"chromatic_number", "Chromatic number", integer, exponential},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::chromatic_number(g, d)); }},
                    {{"clique_number", "Clique number", integer, exponential},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::clique_number(g, d)); }},
                    {{"diameter", "Diameter", integer, polynomial},
                        [] (const Graph & g, const Deadline &) {
                            auto ecc = s::eccentricities(g);
                            if (! ecc)
                                return InvariantValue::undefined();
                            return InvariantValue::computed(*std::max_element(ecc->begin(), ecc->end()));
                        }},
                    {{"edge_connectivity", "Edge connectivity", integer, polynomial},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::edge_connectivity(g, d)); }},
                    {{"girth", "Girth", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return optional_value(s::girth(g)); }},
                    {{"independence_number", "Independence number", integer, exponential},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::independence_number(g, d)); }},
                    {{"is_bipartite", "Bipartite", boolean, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(s::is_bipartite(g)); }},
                    {{"is_claw_free", "Claw-free", boolean, polynomial},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::is_claw_free(g, d)); }},
                    {{"is_connected", "Connected", boolean, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(s::is_connected(g)); }},
                    {{"is_eulerian", "Eulerian", boolean, polynomial},
                        [] (const Graph & g, const Deadline &) {
                            int with_edges = 0;
                            for (Vertex v = 0 ; v < g.order() ; ++v)
                                if (g.degree(v) % 2 != 0)
                                    return InvariantValue::computed(false);
                            VertexSet seen;
                            for (Vertex v = 0 ; v < g.order() ; ++v) {
                                if (g.degree(v) == 0 || seen.test(v))
                                    continue;
                                ++with_edges;
                                VertexSet frontier;
                                frontier.set(v);
                                seen.set(v);
                                while (! frontier.empty()) {
                                    VertexSet next;
                                    frontier.for_each([&] (int w) { next |= g.neighbours(w); });
                                    next -= seen;
                                    seen |= next;
                                    frontier = next;
                                }
                            }
                            return InvariantValue::computed(with_edges <= 1);
                        }},
                    {{"is_hamiltonian", "Hamiltonian", boolean, exponential},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::is_hamiltonian(g, d)); }},
                    {{"is_regular", "Regular", boolean, polynomial},
                        [] (const Graph & g, const Deadline &) {
                            auto [lo, hi] = degree_extremes(g);
                            return InvariantValue::computed(lo == hi);
                        }},
                    {{"maximum_degree", "Maximum degree", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(degree_extremes(g).second); }},
                    {{"minimum_degree", "Minimum degree", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(degree_extremes(g).first); }},
                    {{"number_of_components", "Number of components", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(s::number_of_components(g)); }},
                    {{"number_of_edges", "Number of edges", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(g.size()); }},
                    {{"number_of_triangles", "Number of triangles", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(s::number_of_triangles(g)); }},
                    {{"number_of_vertices", "Number of vertices", integer, polynomial},
                        [] (const Graph & g, const Deadline &) { return InvariantValue::computed(g.order()); }},
                    {{"radius", "Radius", integer, polynomial},
                        [] (const Graph & g, const Deadline &) {
                            auto ecc = s::eccentricities(g);
                            if (! ecc)
                                return InvariantValue::undefined();
                            return InvariantValue::computed(*std::min_element(ecc->begin(), ecc->end()));
                        }},
                    {{"vertex_connectivity", "Vertex connectivity", integer, polynomial},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::vertex_connectivity(g, d)); }},

                    {{"circumference", "Circumference", integer, exponential, true},
                        [] (const Graph & g, const Deadline & d) { return optional_value(s::circumference(g, d)); }},
                    {{"matching_number", "Matching number", integer, polynomial, true},
                        [] (const Graph & g, const Deadline & d) { return InvariantValue::computed(s::matching_number(g, d)); }},
                };
                std::sort(t.begin(), t.end(), [] (const Entry & a, const Entry & b) {
                    return a.descriptor.id < b.descriptor.id;
                });
                return t;
            }();
            return table;
        }

        auto collect(bool include_extended) -> std::vector<InvariantDescriptor>
        {
            std::vector<InvariantDescriptor> out;
            for (const auto & entry : entries())
                if (include_extended || ! entry.descriptor.extended)
                    out.push_back(entry.descriptor);
            return out;
        }

        auto find_entry(std::string_view id) -> const Entry *
        {
            const auto & table = entries();
            auto it = std::lower_bound(table.begin(), table.end(), id, [] (const Entry & e, std::string_view key) {
                return e.descriptor.id < key;
            });
            if (it == table.end() || it->descriptor.id != id)
                return nullptr;
            return &*it;
        }

        constexpr std::array<std::string_view, 2> unsupported{"genus", "treewidth"};
    }

    auto to_string(Kind kind) -> std::string_view
    {
        switch (kind) {
            case Kind::integer: return "integer";
            case Kind::rational: return "rational";
            case Kind::boolean: return "boolean";
        }
        return "integer";
    }

    auto to_string(Hardness hardness) -> std::string_view
    {
        return hardness == Hardness::polynomial ? "polynomial" : "exponential";
    }

    auto to_string(Status status) -> std::string_view
    {
        switch (status) {
            case Status::computed: return "computed";
            case Status::undefined: return "undefined";
            case Status::timed_out: return "timed_out";
            case Status::pending: return "pending";
            case Status::failed: return "failed";
        }
        return "pending";
    }

    auto parse_status(std::string_view text) -> Status
    {
        for (auto s : {Status::computed, Status::undefined, Status::timed_out, Status::pending, Status::failed})
            if (to_string(s) == text)
                return s;
        throw Error(ErrorCode::parse_error, "unknown invariant status '" + std::string(text) + "'");
    }

    auto InvariantValue::computed(bool value) -> InvariantValue
    {
        InvariantValue v(Status::computed);
        v._value = value;
        return v;
    }

    auto InvariantValue::computed(Rational value) -> InvariantValue
    {
        InvariantValue v(Status::computed);
        v._value = std::move(value);
        return v;
    }

    auto InvariantValue::value_text() const -> std::string
    {
        if (auto b = std::get_if<bool>(&_value))
            return *b ? "true" : "false";
        if (auto r = std::get_if<Rational>(&_value))
            return graphhaus::to_string(*r);
        return {};
    }

    auto InvariantValue::from_parts(Status status, std::string_view value_text, Kind kind) -> InvariantValue
    {
        if (status != Status::computed)
            return InvariantValue(status);
        if (kind == Kind::boolean) {
            if (value_text == "true")
                return computed(true);
            if (value_text == "false")
                return computed(false);
            throw Error(ErrorCode::parse_error, "bad boolean invariant value '" + std::string(value_text) + "'");
        }
        return computed(parse_rational(value_text));
    }

    auto registry() -> const std::vector<InvariantDescriptor> &
    {
        static const auto core = collect(false);
        return core;
    }

    auto full_registry() -> const std::vector<InvariantDescriptor> &
    {
        static const auto all = collect(true);
        return all;
    }

    auto scheduled_registry(bool include_extended) -> const std::vector<InvariantDescriptor> &
    {
        return include_extended ? full_registry() : registry();
    }

    auto unsupported_ids() -> std::span<const std::string_view>
    {
        return unsupported;
    }

    auto find(std::string_view id) -> const InvariantDescriptor *
    {
        auto entry = find_entry(id);
        return entry ? &entry->descriptor : nullptr;
    }

    auto descriptor(std::string_view id) -> const InvariantDescriptor &
    {
        if (auto d = find(id))
            return *d;
        if (std::find(unsupported.begin(), unsupported.end(), id) != unsupported.end())
            throw Error(ErrorCode::unsupported_invariant, "invariant '" + std::string(id) + "' is not supported");
        throw Error(ErrorCode::unknown_invariant, "unknown invariant '" + std::string(id) + "'");
    }

    auto compute(std::string_view id, const Graph & g, const Deadline & deadline) -> InvariantValue
    {
        descriptor(id);
        const Entry * entry = find_entry(id);
        try {
            return entry->solve(g, deadline);
        }
        catch (const Timeout &) {
            return InvariantValue::timed_out();
        }
        catch (const std::exception &) {
            return InvariantValue::failed();
        }
    }

    auto compute(std::string_view id, const Graph & g, Duration budget) -> InvariantValue
    {
        return compute(id, g, Deadline::after(budget));
    }
}
