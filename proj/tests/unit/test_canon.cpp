#include <doctest.h>

#include <graphhaus/canon.hpp>
#include <graphhaus/formats.hpp>

#include "../oracles/oracles.hpp"

#include <map>
#include <random>
#include <set>

using namespace graphhaus;
using namespace graphhaus::canon;

namespace
{
    auto kneser_5_2() -> Graph
    {
        std::vector<std::pair<int, int>> subsets;
        for (int a = 0 ; a < 5 ; ++a)
            for (int b = a + 1 ; b < 5 ; ++b)
                subsets.emplace_back(a, b);
        GraphBuilder builder(10);
        for (int i = 0 ; i < 10 ; ++i)
            for (int j = i + 1 ; j < 10 ; ++j) {
                auto [a, b] = subsets[i];
                auto [c, d] = subsets[j];
                if (a != c && a != d && b != c && b != d)
                    builder.add_edge(i, j);
            }
        return std::move(builder).build();
    }

    auto factorial(int n) -> BigInt
    {
        BigInt r = 1;
        for (int i = 2 ; i <= n ; ++i)
            r *= i;
        return r;
    }
}

TEST_CASE("canonical form applies its relabelling")
{
    std::mt19937_64 rng(5);
    for (int i = 0 ; i < 40 ; ++i) {
        auto g = oracle::random_graph(1 + static_cast<int>(rng() % 30), 0.3, rng);
        auto r = canonical_form(g);
        REQUIRE(r);
        CHECK(g.relabelled(r->relabelling) == r->canonical_graph);
    }
}

TEST_CASE("C5 is canonically invariant under all 120 relabellings")
{
    auto c5 = Graph::cycle(5);
    auto key = canonical_key(c5);
    std::vector<int> perm{0, 1, 2, 3, 4};
    int count = 0;
    do {
        CHECK(canonical_key(c5.relabelled(perm)) == key);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(count == 120);
}

TEST_CASE("keys separate and identify small examples")
{
    CHECK(canonical_key(Graph::complete(3)) == canonical_key(Graph::complete(3).relabelled(std::vector<int>{2, 0, 1})));
    CHECK(canonical_key(Graph::cycle(5)) != canonical_key(Graph::path(5)));
    CHECK(canonical_key(complement(Graph::cycle(5))) == canonical_key(Graph::cycle(5)));
    CHECK(canonical_key(Graph::cycle(5)).algorithm_version == current_algorithm_version);

    auto key = canonical_key(Graph::petersen());
    CHECK_NOTHROW(from_graph6(key.key));
}

TEST_CASE("are_isomorphic")
{
    auto c5 = Graph::cycle(5);
    CHECK(are_isomorphic(c5, c5.relabelled(std::vector<int>{3, 1, 4, 0, 2})));
    Graph k3k1(4, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(are_isomorphic(k3k1, Graph::path(4)));
    CHECK_FALSE(are_isomorphic(Graph::path(4), Graph::path(5)));

    auto kneser = kneser_5_2();
    CHECK(oracle::isomorphic(kneser, Graph::petersen()));
    CHECK(are_isomorphic(kneser, Graph::petersen()));
}

TEST_CASE("iso-class counts for n = 1..6 match brute force")
{
    const int expected[] = {0, 1, 2, 4, 11, 34, 156};
    for (int n = 1 ; n <= 6 ; ++n) {
        std::set<std::string> keys, certificates;
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << pairs) ; ++mask) {
            auto g = oracle::from_mask(n, mask);
            keys.insert(canonical_key(g).key);
            if (n <= 5)
                certificates.insert(oracle::min_certificate(g));
        }
        CHECK(static_cast<int>(keys.size()) == expected[n]);
        if (n <= 5)
            CHECK(keys.size() == certificates.size());
    }
}

TEST_CASE("automorphism group order matches brute force for every class up to n = 7")
{
    for (int n = 1 ; n <= 7 ; ++n) {
        std::map<std::string, Graph> classes;
        int pairs = n * (n - 1) / 2;
        std::uint64_t limit = std::uint64_t{1} << pairs;
        for (std::uint64_t mask = 0 ; mask < limit ; ++mask) {
            auto g = oracle::from_mask(n, mask);
            classes.emplace(canonical_key(g).key, g);
        }
        if (n == 7)
            CHECK(classes.size() == 1044);
        for (auto & [key, g] : classes)
            CHECK(automorphism_group_order(g) == BigInt(oracle::automorphism_count(g)));
    }
}

TEST_CASE("automorphism group order of named graphs")
{
    CHECK(automorphism_group_order(Graph::petersen()) == 120);
    CHECK(oracle::automorphism_count(Graph::petersen()) == 120);
    for (int n : {1, 2, 5, 9, 20, 60, 250}) {
        CHECK(automorphism_group_order(Graph::complete(n)) == factorial(n));
        CHECK(automorphism_group_order(Graph::edgeless(n)) == factorial(n));
    }
    CHECK(automorphism_group_order(Graph::cycle(100)) == 200);
}

TEST_CASE("permutation invariance on random graphs")
{
    std::mt19937_64 rng(99);
    for (int i = 0 ; i < 200 ; ++i) {
        int n = 1 + static_cast<int>(rng() % 50);
        auto g = oracle::random_graph(n, (rng() % 100) / 100.0, rng);
        auto perm = oracle::random_permutation(n, rng);
        REQUIRE(canonical_key(g.relabelled(perm)) == canonical_key(g));
    }
}

TEST_CASE("permutation invariance on vertex-transitive and regular graphs")
{
    std::mt19937_64 rng(1);
    // Line graph of K_8 is strongly regular; Petersen's line graph and a
    // disjoint union of cycles stress refinement ties.
    std::vector<Graph> hard{line_graph(Graph::complete(8)), line_graph(Graph::petersen()),
        complement(line_graph(Graph::complete(8)))};
    GraphBuilder cycles(30);
    for (int c = 0 ; c < 6 ; ++c)
        for (int i = 0 ; i < 5 ; ++i)
            cycles.add_edge(c * 5 + i, c * 5 + (i + 1) % 5);
    hard.push_back(std::move(cycles).build());

    for (const auto & g : hard) {
        auto key = canonical_key(g);
        for (int t = 0 ; t < 10 ; ++t)
            CHECK(canonical_key(g.relabelled(oracle::random_permutation(g.order(), rng))) == key);
    }
    CHECK(automorphism_group_order(line_graph(Graph::complete(8))) == factorial(8));
    CHECK(automorphism_group_order(hard[3]) == BigInt(10) * 10 * 10 * 10 * 10 * 10 * factorial(6));
}

TEST_CASE("deadline cancels canonicalisation")
{
    VirtualClock clock;
    auto deadline = Deadline::after(Duration::zero(), clock);
    auto g = line_graph(Graph::complete(20));
    CHECK_FALSE(canonical_form(g, deadline).has_value());
}

TEST_CASE("stability audit")
{
    std::vector<StabilityRecord> records;
    CHECK(verify_canonical_stability(records).ok());
    CHECK(verify_canonical_stability(records).checked == 0);

    std::mt19937_64 rng(8);
    for (int i = 0 ; i < 30 ; ++i) {
        // regular graphs leave refinement with ties, so the search has
        // several leaves and the tie-break matters
        auto g = oracle::random_regular(10 + 2 * static_cast<int>(rng() % 5), 3, rng);
        records.push_back(StabilityRecord{i + 1, canonical_key(g), g});
    }
    auto clean = verify_canonical_stability(records);
    CHECK(clean.ok());
    CHECK(clean.checked == 30);

    auto flipped = verify_canonical_stability(records, Variant::reversed_tie_break);
    CHECK_FALSE(flipped.ok());
    for (auto & m : flipped.mismatches) {
        CHECK(m.recomputed.algorithm_version == 2);
        // both keys still describe the same isomorphism class
        CHECK(are_isomorphic(from_graph6(m.stored.key), from_graph6(m.recomputed.key)));
    }
}
