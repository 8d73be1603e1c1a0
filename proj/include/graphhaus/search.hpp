#ifndef GRAPHHAUS_SEARCH_HPP
#define GRAPHHAUS_SEARCH_HPP

#include <graphhaus/deadline.hpp>
#include <graphhaus/formula.hpp>
#include <graphhaus/graph.hpp>
#include <graphhaus/subiso.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace graphhaus::query
{
    using GraphId = std::int64_t;

    enum class Polarity
    {
        include,
        exclude
    };

    enum class Parity
    {
        even,
        odd
    };

    enum class TextScope
    {
        name,
        comment,
        both
    };

    struct InvariantRange
    {
        std::string id;
        std::optional<Rational> min, max;
    };

    struct InvariantExact
    {
        std::string id;
        Rational value;
    };

    struct InvariantParity
    {
        std::string id;
        Parity parity = Parity::even;
    };

    struct BooleanClass
    {
        std::string id;
        Polarity polarity = Polarity::include;
    };

    struct InterestingMark
    {
        std::string id;
    };

    struct TextSearch
    {
        std::string text;
        TextScope scope = TextScope::both;
    };

    struct FormulaConstraint
    {
        FormulaAst formula;
    };

    struct SubgraphConstraint
    {
        Graph pattern;
        subiso::Mode mode = subiso::Mode::induced;
        Polarity polarity = Polarity::include;
    };

    using Constraint = std::variant<InvariantRange, InvariantExact, InvariantParity, BooleanClass,
          InterestingMark, TextSearch, FormulaConstraint, SubgraphConstraint>;

    inline constexpr Duration min_time_budget = std::chrono::seconds(5);
    inline constexpr Duration max_time_budget = std::chrono::seconds(120);
    inline constexpr Duration default_time_budget = std::chrono::seconds(30);

    struct SearchQuery
    {
        std::vector<Constraint> constraints;
        Duration time_budget = default_time_budget;
    };

    struct SearchResult
    {
        /// Ascending by (order, id).
        std::vector<GraphId> ids;
        bool complete = true;
        /// Candidates examined by the subgraph scan.
        std::size_t scanned = 0;
    };

    /// Everything the non-subgraph constraints look at for one graph.
    struct GraphEntry
    {
        GraphId id = 0;
        int order = 0;
        int size = 0;
        std::string name;
        std::vector<std::string> comments;
        std::set<std::string, std::less<>> interesting;
        ValueMap values;
    };

    /// Read-only view of a graph collection.
    class SearchSource
    {
    public:
        virtual ~SearchSource() = default;
        virtual auto entries() const -> std::vector<GraphEntry> = 0;
        virtual auto graph(GraphId id) const -> Graph = 0;
    };

    /// Throws Error(budget_out_of_range), Error(invalid_constraint),
    /// Error(unknown_invariant) or Error(unsupported_invariant).
    auto validate(const SearchQuery & query) -> void;

    /// Whether one entry passes one non-subgraph constraint. Non-computed
    /// values never match.
    auto matches(const Constraint & constraint, const GraphEntry & entry) -> bool;

    /// Filters by the non-subgraph constraints, then scans the survivors in
    /// ascending order for the subgraph constraints under the time budget.
    auto execute_search(const SearchQuery & query, const SearchSource & source,
            const Clock & clock = SteadyClock::instance()) -> SearchResult;

    /// Simple in-memory source, for tests and tools.
    class MemorySource final : public SearchSource
    {
    public:
        auto add(GraphEntry entry, Graph graph) -> void;
        auto entries() const -> std::vector<GraphEntry> override { return _entries; }
        auto graph(GraphId id) const -> Graph override;

    private:
        std::vector<GraphEntry> _entries;
        std::vector<std::pair<GraphId, Graph>> _graphs;
    };
}

#endif
