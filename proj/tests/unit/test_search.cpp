#include <doctest.h>

#include <graphhaus/error.hpp>
#include <graphhaus/search.hpp>

#include "../oracles/oracles.hpp"

#include <random>

using namespace graphhaus;
using namespace graphhaus::query;
using graphhaus::invariants::InvariantValue;

namespace
{
    auto entry_for(GraphId id, const Graph & g, std::string name = {}) -> GraphEntry
    {
        GraphEntry e;
        e.id = id;
        e.name = std::move(name);
        for (const auto & d : invariants::registry())
            e.values.emplace(d.id, invariants::compute(d.id, g));
        return e;
    }

    auto code_of(const SearchQuery & q) -> std::optional<ErrorCode>
    {
        try {
            validate(q);
        }
        catch (const Error & e) {
            return e.code();
        }
        return std::nullopt;
    }

    auto ids(std::initializer_list<GraphId> list) -> std::vector<GraphId>
    {
        return list;
    }

    auto is_subsequence(const std::vector<GraphId> & part, const std::vector<GraphId> & whole) -> bool
    {
        std::size_t i = 0;
        for (auto x : whole)
            if (i < part.size() && part[i] == x)
                ++i;
        return i == part.size();
    }

    /// A store of random graphs of assorted orders, inserted in random order.
    auto random_source(int count, std::uint64_t seed, std::vector<Graph> & graphs) -> MemorySource
    {
        std::mt19937_64 rng(seed);
        MemorySource source;
        for (int i = 0 ; i < count ; ++i) {
            int n = 3 + static_cast<int>(rng() % 10);
            auto g = oracle::random_graph(n, 0.45, rng);
            graphs.push_back(g);
            source.add(entry_for(i + 1, g, "graph " + std::to_string(i + 1)), g);
        }
        return source;
    }
}

TEST_CASE("parity over C5 and K4")
{
    MemorySource source;
    source.add(entry_for(1, Graph::cycle(5), "C5"), Graph::cycle(5));
    source.add(entry_for(2, Graph::complete(4), "K4"), Graph::complete(4));
    SearchQuery q;
    q.constraints.push_back(InvariantParity{"number_of_vertices", Parity::odd});
    CHECK(execute_search(q, source).ids == ids({1}));
    q.constraints[0] = InvariantParity{"number_of_vertices", Parity::even};
    CHECK(execute_search(q, source).ids == ids({2}));
}

TEST_CASE("girth plus induced C5 finds the Petersen graph")
{
    MemorySource source;
    source.add(entry_for(1, Graph::petersen(), "Petersen graph"), Graph::petersen());
    source.add(entry_for(2, Graph::cycle(5)), Graph::cycle(5));
    source.add(entry_for(3, Graph::complete(5)), Graph::complete(5));
    source.add(entry_for(4, Graph::cycle(10)), Graph::cycle(10));
    SearchQuery q;
    q.constraints.push_back(InvariantExact{"girth", 5});
    q.constraints.push_back(SubgraphConstraint{Graph::cycle(5), subiso::Mode::induced, Polarity::include});
    auto r = execute_search(q, source);
    CHECK(r.ids == ids({2, 1}));
    CHECK(r.complete);

    q.constraints[1] = SubgraphConstraint{Graph(4, {{0, 1}, {0, 2}, {0, 3}}), subiso::Mode::induced, Polarity::exclude};
    CHECK(execute_search(q, source).ids == ids({2}));
}

TEST_CASE("results are ordered by order then id")
{
    MemorySource source;
    source.add(entry_for(7, Graph::cycle(6)), Graph::cycle(6));
    source.add(entry_for(3, Graph::cycle(8)), Graph::cycle(8));
    source.add(entry_for(9, Graph::cycle(4)), Graph::cycle(4));
    source.add(entry_for(2, Graph::cycle(6)), Graph::cycle(6));
    SearchQuery q;
    q.constraints.push_back(BooleanClass{"is_bipartite", Polarity::include});
    CHECK(execute_search(q, source).ids == ids({9, 2, 7, 3}));
}

TEST_CASE("text and interesting marks")
{
    MemorySource source;
    auto a = entry_for(1, Graph::petersen(), "Petersen graph");
    a.comments = {"The smallest snark"};
    a.interesting = {"chromatic_index"};
    source.add(a, Graph::petersen());
    auto b = entry_for(2, Graph::complete(4), "K4");
    b.comments = {"tetrahedron, also PETERSEN-free"};
    source.add(b, Graph::complete(4));

    SearchQuery q;
    q.constraints.push_back(TextSearch{"petersen", TextScope::name});
    CHECK(execute_search(q, source).ids == ids({1}));
    q.constraints[0] = TextSearch{"petersen", TextScope::both};
    CHECK(execute_search(q, source).ids == ids({2, 1}));
    q.constraints[0] = TextSearch{"SNARK", TextScope::comment};
    CHECK(execute_search(q, source).ids == ids({1}));
    q.constraints[0] = InterestingMark{"chromatic_index"};
    CHECK(execute_search(q, source).ids == ids({1}));
}

TEST_CASE("validation")
{
    SearchQuery q;
    CHECK_FALSE(code_of(q));
    q.time_budget = std::chrono::seconds(4);
    CHECK(code_of(q) == ErrorCode::budget_out_of_range);
    q.time_budget = std::chrono::seconds(121);
    CHECK(code_of(q) == ErrorCode::budget_out_of_range);
    q.time_budget = std::chrono::seconds(120);
    CHECK_FALSE(code_of(q));

    auto single = [] (Constraint c) {
        SearchQuery q;
        q.constraints.push_back(std::move(c));
        return code_of(q);
    };
    CHECK(single(InvariantRange{"is_bipartite", 0, 1}) == ErrorCode::invalid_constraint);
    CHECK(single(InvariantRange{"girth", 5, 3}) == ErrorCode::invalid_constraint);
    CHECK(single(InvariantRange{"girth", std::nullopt, std::nullopt}) == ErrorCode::invalid_constraint);
    CHECK(single(InvariantParity{"average_degree", Parity::odd}) == ErrorCode::invalid_constraint);
    CHECK(single(BooleanClass{"girth", Polarity::include}) == ErrorCode::invalid_constraint);
    CHECK(single(InvariantExact{"nonsense", 1}) == ErrorCode::unknown_invariant);
    CHECK(single(InvariantExact{"genus", 1}) == ErrorCode::unsupported_invariant);
    CHECK(single(TextSearch{"", TextScope::both}) == ErrorCode::invalid_constraint);
    CHECK_FALSE(single(InvariantRange{"girth", 3, std::nullopt}));
}

TEST_CASE("non-computed values never match numeric constraints")
{
    MemorySource source;
    auto timed_out = entry_for(1, Graph::petersen());
    timed_out.values.insert_or_assign("chromatic_number", InvariantValue::timed_out());
    source.add(timed_out, Graph::petersen());
    auto pending = entry_for(2, Graph::petersen());
    pending.values.insert_or_assign("chromatic_number", InvariantValue::pending());
    source.add(pending, Graph::petersen());
    source.add(entry_for(3, Graph::petersen()), Graph::petersen());
    auto undefined_girth = entry_for(4, Graph::path(5));
    source.add(undefined_girth, Graph::path(5));

    // only the Petersen record with a computed value (and the path, where
    // the constraint allows chromatic number 2) may match
    for (auto [c, expected] : std::vector<std::pair<Constraint, std::vector<GraphId>>>{
            {InvariantRange{"chromatic_number", 0, 100}, ids({4, 3})},
            {InvariantExact{"chromatic_number", 3}, ids({3})},
            {InvariantParity{"chromatic_number", Parity::odd}, ids({3})},
            {FormulaConstraint{parse_formula("chromatic_number >= 0")}, ids({4, 3})}}) {
        SearchQuery q;
        q.constraints.push_back(c);
        CHECK(execute_search(q, source).ids == expected);
    }
    SearchQuery q;
    q.constraints.push_back(InvariantRange{"girth", 0, std::nullopt});
    CHECK(execute_search(q, source).ids == ids({1, 2, 3}));
}

TEST_CASE("conjunction equals intersection and ranges agree with formulas")
{
    std::vector<Graph> graphs;
    auto source = random_source(150, 31, graphs);
    std::mt19937_64 rng(7);
    std::vector<std::string> numeric{"diameter", "girth", "clique_number", "number_of_edges", "minimum_degree", "average_degree"};

    for (int round = 0 ; round < 60 ; ++round) {
        auto id = numeric[rng() % numeric.size()];
        int a = static_cast<int>(rng() % 4), b = a + static_cast<int>(rng() % 6);
        SearchQuery range, formula;
        range.constraints.push_back(InvariantRange{id, a, b});
        formula.constraints.push_back(FormulaConstraint{parse_formula(
                id + " >= " + std::to_string(a) + " AND " + id + " <= " + std::to_string(b))});
        auto by_range = execute_search(range, source).ids;
        CHECK(by_range == execute_search(formula, source).ids);

        SearchQuery other;
        other.constraints.push_back(BooleanClass{"is_connected", rng() % 2 ? Polarity::include : Polarity::exclude});
        auto by_other = execute_search(other, source).ids;

        SearchQuery both;
        both.constraints = range.constraints;
        both.constraints.push_back(other.constraints[0]);
        auto combined = execute_search(both, source).ids;
        std::vector<GraphId> intersection;
        for (auto x : by_range)
            if (std::find(by_other.begin(), by_other.end(), x) != by_other.end())
                intersection.push_back(x);
        CHECK(combined == intersection);
    }
}

TEST_CASE("subgraph scans agree with brute force when the budget is ample")
{
    std::vector<Graph> graphs;
    auto source = random_source(120, 5, graphs);
    for (auto [pattern, mode] : {std::pair{Graph::cycle(4), subiso::Mode::induced},
                                 std::pair{Graph::complete(4), subiso::Mode::subgraph},
                                 std::pair{Graph::path(4), subiso::Mode::induced}}) {
        SearchQuery q;
        q.constraints.push_back(SubgraphConstraint{pattern, mode, Polarity::include});
        auto r = execute_search(q, source);
        CHECK(r.complete);
        std::vector<std::pair<int, GraphId>> expected;
        for (std::size_t i = 0 ; i < graphs.size() ; ++i)
            if (oracle::embeds(pattern, graphs[i], mode == subiso::Mode::induced))
                expected.emplace_back(graphs[i].order(), static_cast<GraphId>(i + 1));
        std::sort(expected.begin(), expected.end());
        std::vector<GraphId> expected_ids;
        for (auto [order, id] : expected)
            expected_ids.push_back(id);
        CHECK(r.ids == expected_ids);
    }
}

TEST_CASE("an exhausted budget yields a prefix-consistent partial result")
{
    std::vector<Graph> graphs;
    auto source = random_source(120, 5, graphs);
    SearchQuery q;
    q.time_budget = std::chrono::seconds(5);
    q.constraints.push_back(SubgraphConstraint{Graph::cycle(4), subiso::Mode::induced, Polarity::include});
    auto full = execute_search(q, source);
    REQUIRE(full.complete);

    for (int seconds_per_read : {1, 2, 3}) {
        VirtualClock clock{std::chrono::seconds(seconds_per_read)};
        auto partial = execute_search(q, source, clock);
        CHECK_FALSE(partial.complete);
        CHECK(partial.scanned < 120);

        // the scanned candidates are exactly the first `scanned` graphs in
        // (order, id) order, and the result is their share of the full answer
        std::vector<std::pair<int, GraphId>> all;
        for (std::size_t i = 0 ; i < graphs.size() ; ++i)
            all.emplace_back(graphs[i].order(), static_cast<GraphId>(i + 1));
        std::sort(all.begin(), all.end());
        std::set<GraphId> prefix;
        for (std::size_t i = 0 ; i < partial.scanned ; ++i)
            prefix.insert(all[i].second);
        std::vector<GraphId> expected;
        for (auto id : full.ids)
            if (prefix.contains(id))
                expected.push_back(id);
        // only the candidate being searched when time ran out can be missing
        CHECK(is_subsequence(partial.ids, expected));
        CHECK(expected.size() - partial.ids.size() <= 1);
    }

    VirtualClock stopped{std::chrono::seconds(10)};
    auto none = execute_search(q, source, stopped);
    CHECK_FALSE(none.complete);
    CHECK(none.ids.empty());
}

TEST_CASE("a timed-out candidate is dropped and marks the result incomplete")
{
    std::mt19937_64 rng(3);
    MemorySource source;
    auto small = Graph::complete(5);
    auto hard = oracle::random_graph(150, 0.5, rng);
    source.add(entry_for(1, small), small);
    GraphEntry hard_entry;
    hard_entry.id = 2;
    source.add(hard_entry, hard);

    SearchQuery q;
    q.time_budget = std::chrono::seconds(5);
    q.constraints.push_back(SubgraphConstraint{Graph::complete(14), subiso::Mode::subgraph, Polarity::exclude});
    VirtualClock clock{std::chrono::seconds(1)};
    auto r = execute_search(q, source, clock);
    CHECK(r.ids == ids({1}));
    CHECK_FALSE(r.complete);
}
