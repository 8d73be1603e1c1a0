#include <doctest.h>

#include <graphhaus/error.hpp>
#include <graphhaus/invariants.hpp>

#include "../oracles/invariant_oracles.hpp"

#include <random>
#include <set>

using namespace graphhaus;
using namespace graphhaus::invariants;

namespace
{
    auto expected(std::string_view id, const Graph & g) -> InvariantValue
    {
        auto v = oracle::expected_value(id, g);
        if (! v)
            FAIL("no oracle for " << id);
        return v.value_or(InvariantValue::pending());
    }

    auto number(std::string_view id, const Graph & g) -> Rational
    {
        auto v = compute(id, g);
        REQUIRE(v.is_computed());
        return v.as_number();
    }
}

TEST_CASE("registry is sorted, unique and covers the commonly used invariants")
{
    const auto & core = registry();
    CHECK(core.size() == 23);
    std::set<std::string> ids;
    for (std::size_t i = 0 ; i < core.size() ; ++i) {
        ids.insert(core[i].id);
        CHECK_FALSE(core[i].extended);
        if (i > 0)
            CHECK(core[i - 1].id < core[i].id);
    }
    CHECK(ids.size() == core.size());
    for (auto id : {"chromatic_number", "chromatic_index", "clique_number", "diameter", "automorphism_group_order"})
        CHECK(ids.count(id) == 1);
    CHECK(ids.count("genus") == 0);
    CHECK(ids.count("circumference") == 0);

    CHECK(full_registry().size() == 25);
    CHECK(find("circumference")->extended);
    CHECK(find("is_bipartite")->kind == Kind::boolean);
    CHECK(find("average_degree")->kind == Kind::rational);
    CHECK(find("chromatic_number")->hardness == Hardness::exponential);
}

TEST_CASE("unknown and unsupported ids")
{
    auto code_of = [] (std::string_view id) {
        try {
            descriptor(id);
        }
        catch (const Error & e) {
            return e.code();
        }
        return ErrorCode::invalid_argument;
    };
    CHECK(code_of("genus") == ErrorCode::unsupported_invariant);
    CHECK(code_of("treewidth") == ErrorCode::unsupported_invariant);
    CHECK(code_of("spectral_radius") == ErrorCode::unknown_invariant);
    CHECK_THROWS_AS(compute("nope", Graph::complete(3)), Error);
}

TEST_CASE("every invariant agrees with its oracle on all 208 classes up to six vertices")
{
    std::mt19937_64 rng(99);
    int graphs = 0;
    for (int n = 1 ; n <= 6 ; ++n)
        for (const auto & rep : oracle::iso_class_representatives(n)) {
            auto g = rep.relabelled(oracle::random_permutation(n, rng));
            ++graphs;
            for (const auto & d : full_registry()) {
                INFO(d.id << " on " << n << " vertices");
                CHECK(compute(d.id, g) == expected(d.id, g));
            }
        }
    CHECK(graphs == 208);
}

TEST_CASE("random graphs on seven to nine vertices agree with the oracles")
{
    std::mt19937_64 rng(1234);
    for (int round = 0 ; round < 40 ; ++round) {
        int n = 7 + static_cast<int>(rng() % 3);
        auto g = oracle::random_graph(n, 0.2 + 0.6 * (round % 5) / 4.0, rng);
        for (const auto & d : full_registry()) {
            if (d.id == "edge_connectivity" && g.size() > 20)
                continue;
            if (d.id == "chromatic_index" && g.size() > 18)
                continue;
            INFO(d.id << " on " << g.order() << " vertices, " << g.size() << " edges");
            CHECK(compute(d.id, g) == expected(d.id, g));
        }
    }
}

TEST_CASE("Petersen graph")
{
    auto p = Graph::petersen();
    CHECK(number("diameter", p) == 2);
    CHECK(number("radius", p) == 2);
    CHECK(number("girth", p) == 5);
    CHECK(number("clique_number", p) == 2);
    CHECK(number("independence_number", p) == 4);
    CHECK(number("chromatic_number", p) == 3);
    CHECK(number("chromatic_index", p) == 4);
    CHECK(number("vertex_connectivity", p) == 3);
    CHECK(number("edge_connectivity", p) == 3);
    CHECK(number("automorphism_group_order", p) == 120);
    CHECK(number("number_of_triangles", p) == 0);
    CHECK(number("average_degree", p) == 3);
    CHECK(number("circumference", p) == 9);
    CHECK(number("matching_number", p) == 5);
    CHECK(compute("is_hamiltonian", p) == InvariantValue::computed(false));
    CHECK(compute("is_regular", p) == InvariantValue::computed(true));
    CHECK(compute("is_claw_free", p) == InvariantValue::computed(false));

    CHECK_FALSE(oracle::hamiltonian(p));
    CHECK(oracle::chromatic_index(p) == 4);
    CHECK(oracle::vertex_connectivity(p) == 3);
    CHECK(oracle::edge_connectivity(p) == 3);
    CHECK(oracle::independence_number(p) == 4);
    CHECK(oracle::girth(p) == 5);
    CHECK(oracle::diameter(p) == 2);
}

TEST_CASE("small forced cases")
{
    CHECK(number("chromatic_number", Graph::complete(4)) == 4);
    CHECK(number("number_of_triangles", Graph::complete(4)) == 4);
    CHECK(number("chromatic_index", Graph::cycle(5)) == 3);
    CHECK(compute("diameter", Graph::edgeless(2)) == InvariantValue::undefined());
    CHECK(compute("girth", Graph::path(6)) == InvariantValue::undefined());
    CHECK(number("diameter", Graph::edgeless(1)) == 0);
    CHECK(number("vertex_connectivity", Graph::complete(7)) == 6);
    CHECK(number("vertex_connectivity", Graph::edgeless(1)) == 0);
    CHECK(number("average_degree", Graph::path(3)) == Rational(4, 3));
    CHECK(compute("is_hamiltonian", Graph::complete(2)) == InvariantValue::computed(false));
    CHECK(compute("is_eulerian", Graph(5, {{0, 1}, {1, 2}, {0, 2}})) == InvariantValue::computed(true));
    CHECK(compute("is_eulerian", Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})) == InvariantValue::computed(false));
}

TEST_CASE("larger structured graphs")
{
    CHECK(number("chromatic_index", Graph::complete(9)) == 9);
    CHECK(number("chromatic_index", Graph::complete(10)) == 9);
    CHECK(number("chromatic_number", Graph::cycle(101)) == 3);
    CHECK(number("girth", Graph::cycle(101)) == 101);
    CHECK(number("diameter", Graph::cycle(101)) == 50);
    CHECK(number("clique_number", Graph::complete(60)) == 60);
    CHECK(number("independence_number", Graph::cycle(30)) == 15);
    CHECK(compute("is_hamiltonian", Graph::cycle(200)) == InvariantValue::computed(true));
    CHECK(number("automorphism_group_order", Graph::complete(250)) > BigInt(1) << 1000);
    CHECK(number("vertex_connectivity", complement(Graph::cycle(12))) == oracle::vertex_connectivity(complement(Graph::cycle(12))));
}

TEST_CASE("monotone sanity on random graphs")
{
    std::mt19937_64 rng(77);
    for (int round = 0 ; round < 60 ; ++round) {
        int n = 5 + static_cast<int>(rng() % 25);
        auto g = oracle::random_graph(n, 0.15 + 0.1 * (round % 6), rng);
        auto omega = solvers::clique_number(g);
        auto chi = solvers::chromatic_number(g);
        auto delta = number("maximum_degree", g);
        auto min_degree = number("minimum_degree", g);
        CHECK(omega <= chi);
        CHECK(chi <= delta + 1);
        auto chi_e = solvers::chromatic_index(g);
        CHECK((chi_e == delta || chi_e == delta + 1));
        auto kappa = solvers::vertex_connectivity(g);
        auto lambda = solvers::edge_connectivity(g);
        CHECK(kappa <= lambda);
        CHECK(lambda <= min_degree);
        CHECK(solvers::independence_number(g) == solvers::clique_number(complement(g)));
    }
}

TEST_CASE("results are deterministic")
{
    std::mt19937_64 rng(8);
    auto g = oracle::random_graph(20, 0.4, rng);
    for (const auto & d : full_registry())
        CHECK(compute(d.id, g) == compute(d.id, g));
}

TEST_CASE("exponential invariants time out on hard instances")
{
    std::mt19937_64 rng(5);
    auto dense = oracle::random_graph(200, 0.5, rng);
    for (auto id : {"chromatic_number", "clique_number", "independence_number"}) {
        auto v = compute(id, dense, std::chrono::milliseconds(1));
        CHECK(v.status() == Status::timed_out);
    }
    auto cubic = oracle::random_regular(150, 3, rng);
    CHECK(compute("circumference", cubic, std::chrono::milliseconds(1)).status() == Status::timed_out);

    VirtualClock clock;
    CHECK(compute("is_hamiltonian", Graph::petersen(), Deadline::after(Duration::zero(), clock)).status() == Status::timed_out);
    CHECK(compute("chromatic_index", Graph::petersen(), Deadline::after(Duration::zero(), clock)).status() == Status::timed_out);
    // polynomial invariants without search ignore the deadline
    CHECK(compute("number_of_edges", Graph::petersen(), Deadline::after(Duration::zero(), clock)) == InvariantValue::computed(15));
}

TEST_CASE("values serialize through status and text")
{
    auto round_trip = [] (const InvariantValue & v, Kind kind) {
        return InvariantValue::from_parts(v.status(), v.value_text(), kind);
    };
    CHECK(round_trip(InvariantValue::computed(Rational(7, 3)), Kind::rational) == InvariantValue::computed(Rational(7, 3)));
    CHECK(round_trip(InvariantValue::computed(true), Kind::boolean) == InvariantValue::computed(true));
    CHECK(round_trip(InvariantValue::timed_out(), Kind::integer) == InvariantValue::timed_out());
    CHECK(round_trip(InvariantValue::undefined(), Kind::integer) == InvariantValue::undefined());
    CHECK(round_trip(InvariantValue::pending(), Kind::integer) == InvariantValue::pending());
    CHECK(parse_status("timed_out") == Status::timed_out);
    CHECK_THROWS(parse_status("TimedOut"));
}
