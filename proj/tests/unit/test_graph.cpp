#include <doctest.h>

#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>
#include <graphhaus/graph.hpp>
#include <graphhaus/layout.hpp>

#include "../oracles/oracles.hpp"

#include <cmath>
#include <random>

using namespace graphhaus;

namespace
{
    auto error_code_of(auto && f) -> std::optional<ErrorCode>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.code();
        }
        return std::nullopt;
    }

    // Bit packing written out independently of the codec: a string of '0'/'1'
    // characters in column order, padded to a multiple of six.
    auto reference_graph6(const Graph & g) -> std::string
    {
        int n = g.order();
        std::string out;
        if (n <= 62)
            out.push_back(static_cast<char>(63 + n));
        else {
            out.push_back('~');
            out.push_back(static_cast<char>(63 + (n >> 12)));
            out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
            out.push_back(static_cast<char>(63 + (n & 63)));
        }
        std::string bits;
        for (int j = 1 ; j < n ; ++j)
            for (int i = 0 ; i < j ; ++i)
                bits.push_back(g.adjacent(i, j) ? '1' : '0');
        while (bits.size() % 6)
            bits.push_back('0');
        for (std::size_t k = 0 ; k < bits.size() ; k += 6)
            out.push_back(static_cast<char>(63 + std::stoi(bits.substr(k, 6), nullptr, 2)));
        return out;
    }
}

TEST_CASE("new_graph validates order, loops and endpoints")
{
    Graph p3(3, {{0, 1}, {1, 2}});
    CHECK(p3.order() == 3);
    CHECK(p3.size() == 2);
    CHECK(p3.adjacent(1, 0));
    CHECK_FALSE(p3.adjacent(0, 2));

    Graph dup(3, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.size() == 1);

    CHECK(error_code_of([] { Graph(0, {}); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { Graph(251, {}); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { Graph(2, {{0, 0}}); }) == ErrorCode::loop_rejected);
    CHECK(error_code_of([] { Graph(2, {{0, 2}}); }) == ErrorCode::vertex_out_of_range);
    CHECK(error_code_of([] { Graph(2, {{-1, 1}}); }) == ErrorCode::vertex_out_of_range);
    CHECK_NOTHROW(Graph::edgeless(250));
}

TEST_CASE("graph6 fixed vectors")
{
    CHECK(to_graph6(Graph::edgeless(1)) == "@");
    CHECK(to_graph6(Graph(2, {{0, 1}})) == "A_");
    CHECK(to_graph6(Graph::edgeless(2)) == "A?");
    CHECK(to_graph6(Graph::complete(3)) == "Bw");

    CHECK(from_graph6("A?") == Graph::edgeless(2));
    CHECK(from_graph6("Bw") == Graph::complete(3));
    CHECK(from_graph6("A_") == Graph(2, {{0, 1}}));
    CHECK(from_graph6("@") == Graph::edgeless(1));

    // well-known encoding of the Petersen graph under the standard labelling
    CHECK(to_graph6(Graph::petersen()) == reference_graph6(Graph::petersen()));
}

TEST_CASE("graph6 long header")
{
    auto g = Graph::edgeless(63);
    auto text = to_graph6(g);
    CHECK(text.substr(0, 4) == "~??~");
    CHECK(text == reference_graph6(g));
    CHECK(from_graph6(text).order() == 63);

    auto k250 = Graph::complete(250);
    CHECK(to_graph6(k250) == reference_graph6(k250));
    CHECK(from_graph6(to_graph6(k250)) == k250);
}

TEST_CASE("graph6 rejects malformed input")
{
    CHECK(error_code_of([] { from_graph6(""); }) == ErrorCode::malformed_header);
    CHECK(error_code_of([] { from_graph6("?"); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { from_graph6("A"); }) == ErrorCode::truncated_body);
    CHECK(error_code_of([] { from_graph6("A_?"); }) == ErrorCode::trailing_data);
    CHECK(error_code_of([] { from_graph6("A@"); }) == ErrorCode::nonzero_padding);
    CHECK(error_code_of([] { from_graph6("A "); }) == ErrorCode::invalid_byte);
    CHECK(error_code_of([] { from_graph6("A\x7f"); }) == ErrorCode::invalid_byte);
    CHECK(error_code_of([] { from_graph6("~?"); }) == ErrorCode::malformed_header);
    // order 62 spelled with the long header is not the canonical encoding
    CHECK(error_code_of([] { from_graph6("~??}"); }) == ErrorCode::malformed_header);
    // order 251
    CHECK(error_code_of([] { from_graph6("~?C~"); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { from_graph6("~~??????"); }) == ErrorCode::malformed_header);
}

TEST_CASE("graph6 round trip and mutation rejection over random graphs")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> order(1, 250);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        int n = order(rng);
        auto g = oracle::random_graph(n, density(rng), rng);
        auto text = to_graph6(g);
        REQUIRE(text == reference_graph6(g));
        REQUIRE(from_graph6(text) == g);

        if (n > 1) {
            CHECK(error_code_of([&] { from_graph6(text.substr(0, text.size() - 1)); }) == ErrorCode::truncated_body);
            int bits = n * (n - 1) / 2;
            if (bits % 6 != 0) {
                auto mutated = text;
                mutated.back() = static_cast<char>(((mutated.back() - 63) | 1) + 63);
                CHECK(error_code_of([&] { from_graph6(mutated); }) == ErrorCode::nonzero_padding);
            }
        }
    }
}

TEST_CASE("adjacency matrix parsing")
{
    CHECK(from_adjacency_matrix("0 1\n1 0") == Graph(2, {{0, 1}}));
    CHECK(from_adjacency_matrix("011\n101\n110\n") == Graph::complete(3));
    CHECK(error_code_of([] { from_adjacency_matrix("0 1\n0 0"); }) == ErrorCode::not_symmetric);
    CHECK(error_code_of([] { from_adjacency_matrix("1"); }) == ErrorCode::nonzero_diagonal);
    CHECK(error_code_of([] { from_adjacency_matrix("0 1\n1"); }) == ErrorCode::not_square);
    CHECK(error_code_of([] { from_adjacency_matrix(""); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { from_adjacency_matrix("0 2\n2 0"); }) == ErrorCode::parse_error);

    auto pg = Graph::petersen();
    CHECK(from_adjacency_matrix(to_adjacency_matrix(pg)) == pg);
}

TEST_CASE("edge list parsing")
{
    CHECK(from_edge_list("0 1\n1 2") == Graph::path(3));
    auto g = from_edge_list("n=4\n0 1");
    CHECK(g.order() == 4);
    CHECK(g.size() == 1);
    CHECK(error_code_of([] { from_edge_list("0 0"); }) == ErrorCode::loop_rejected);
    CHECK(error_code_of([] { from_edge_list("0 x"); }) == ErrorCode::parse_error);
    CHECK(error_code_of([] { from_edge_list("0 1 2"); }) == ErrorCode::parse_error);
    CHECK(error_code_of([] { from_edge_list("n=2\n0 5"); }) == ErrorCode::vertex_out_of_range);
    CHECK(error_code_of([] { from_edge_list("0 300"); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { from_edge_list(""); }) == ErrorCode::order_out_of_range);

    auto pg = Graph::petersen();
    CHECK(from_edge_list(to_edge_list(pg)) == pg);
}

TEST_CASE("complement")
{
    CHECK(complement(Graph::complete(3)) == Graph::edgeless(3));
    std::mt19937_64 rng(3);
    for (int i = 0 ; i < 50 ; ++i) {
        auto g = oracle::random_graph(1 + static_cast<int>(rng() % 40), 0.4, rng);
        CHECK(complement(complement(g)) == g);
        CHECK(complement(g).size() + g.size() == g.order() * (g.order() - 1) / 2);
    }
    CHECK(oracle::isomorphic(complement(Graph::cycle(5)), Graph::cycle(5)));
}

TEST_CASE("line graph")
{
    auto lp3 = line_graph(Graph::path(3));
    CHECK(lp3.order() == 2);
    CHECK(lp3.size() == 1);

    CHECK(oracle::isomorphic(line_graph(Graph::complete(3)), Graph::complete(3)));

    auto lp = line_graph(Graph::petersen());
    CHECK(lp.order() == 15);
    CHECK(lp.size() == 30);
    for (int v = 0 ; v < 15 ; ++v)
        CHECK(lp.degree(v) == 4);

    // vertex i of the line graph is the i-th edge in (min, max) order
    auto star = Graph(4, {{2, 3}, {0, 3}, {1, 3}});
    auto ls = line_graph(star);
    CHECK(ls == Graph::complete(3));

    CHECK(error_code_of([] { line_graph(Graph::complete(24)); }) == ErrorCode::order_out_of_range);
    CHECK(error_code_of([] { line_graph(Graph::edgeless(3)); }) == ErrorCode::order_out_of_range);
}

TEST_CASE("spring layout")
{
    auto single = spring_layout(Graph::edgeless(1), 10, 1);
    REQUIRE(single.positions.size() == 1);
    CHECK(single.positions[0] == std::pair{0.5, 0.5});

    auto k2 = spring_layout(Graph::complete(2), 50, 9);
    auto [x0, y0] = k2.positions[0];
    auto [x1, y1] = k2.positions[1];
    CHECK(std::hypot(x0 - x1, y0 - y1) > 0.0);

    std::mt19937_64 rng(11);
    for (int i = 0 ; i < 20 ; ++i) {
        auto g = oracle::random_graph(1 + static_cast<int>(rng() % 60), 0.2, rng);
        auto seed = rng();
        auto a = spring_layout(g, 100, seed);
        auto b = spring_layout(g, 100, seed);
        CHECK(a == b);
        REQUIRE(static_cast<int>(a.positions.size()) == g.order());
        for (auto [x, y] : a.positions) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
            CHECK(y >= 0.0);
            CHECK(y <= 1.0);
        }
    }

    CHECK_THROWS_AS(spring_layout(Graph::complete(3), 0, 1), Error);
}
