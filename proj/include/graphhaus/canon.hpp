#ifndef GRAPHHAUS_CANON_HPP
#define GRAPHHAUS_CANON_HPP

#include <graphhaus/deadline.hpp>
#include <graphhaus/graph.hpp>
#include <graphhaus/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graphhaus::canon
{
    /// Which leaf of the search tree is canonical. Only `standard` is used
    /// for storage; `reversed_tie_break` exists so that the stability audit
    /// can be exercised against a deliberately different canonicaliser.
    enum class Variant
    {
        standard,
        reversed_tie_break
    };

    auto algorithm_version(Variant variant) -> int;
    auto variant_for_version(int version) -> std::optional<Variant>;

    inline constexpr Variant current_variant = Variant::standard;
    inline constexpr int current_algorithm_version = 1;

    struct CanonicalKey
    {
        std::string key;
        int algorithm_version = current_algorithm_version;

        auto operator==(const CanonicalKey &) const -> bool = default;
    };

    struct CanonResult
    {
        Graph canonical_graph;
        /// relabelling[v] is the canonical label of input vertex v.
        std::vector<Vertex> relabelling;
        BigInt automorphism_group_order;
        std::uint64_t search_nodes = 0;
    };

    /// Individualisation-refinement search. The canonical graph is the
    /// relabelling whose graph6 bit string is lexicographically smallest
    /// among the leaves (largest, for reversed_tie_break). Returns nullopt
    /// if the deadline fires.
    auto canonical_form(const Graph & g, const Deadline & deadline = Deadline::never(),
            Variant variant = current_variant) -> std::optional<CanonResult>;

    /// graph6 of the canonical graph, tagged with the variant's version.
    /// Runs without a deadline.
    auto canonical_key(const Graph & g, Variant variant = current_variant) -> CanonicalKey;

    auto are_isomorphic(const Graph & g, const Graph & h) -> bool;

    auto automorphism_group_order(const Graph & g, const Deadline & deadline = Deadline::never()) -> std::optional<BigInt>;

    struct StabilityRecord
    {
        std::int64_t id = 0;
        CanonicalKey stored;
        Graph graph;
    };

    struct StabilityMismatch
    {
        std::int64_t id = 0;
        CanonicalKey stored;
        CanonicalKey recomputed;
    };

    struct StabilityReport
    {
        std::size_t checked = 0;
        std::vector<StabilityMismatch> mismatches;

        auto ok() const -> bool { return mismatches.empty(); }
    };

    /// Streaming audit: recomputes each record's key with the given variant
    /// and collects every record whose key text differs from the stored one.
    class StabilityAudit
    {
    public:
        explicit StabilityAudit(Variant variant = current_variant) : _variant(variant) {}

        auto check(const StabilityRecord & record) -> bool;
        auto report() const -> const StabilityReport & { return _report; }

    private:
        Variant _variant;
        StabilityReport _report;
    };

    auto verify_canonical_stability(const std::vector<StabilityRecord> & records,
            Variant variant = current_variant) -> StabilityReport;
}

#endif
