#include <graphhaus/formats.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <vector>

namespace graphhaus
{
    namespace
    {
        constexpr int graph6_bias = 63;

        auto header_bytes(int n) -> std::string
        {
            if (n <= 62)
                return std::string(1, static_cast<char>(n + graph6_bias));
            return {
                static_cast<char>(126),
                static_cast<char>(((n >> 12) & 63) + graph6_bias),
                static_cast<char>(((n >> 6) & 63) + graph6_bias),
                static_cast<char>((n & 63) + graph6_bias)};
        }

        auto split_lines(std::string_view text) -> std::vector<std::string_view>
        {
            std::vector<std::string_view> lines;
            std::size_t start = 0;
            while (start <= text.size()) {
                auto end = text.find('\n', start);
                if (end == std::string_view::npos)
                    end = text.size();
                auto line = text.substr(start, end - start);
                if (! line.empty() && line.back() == '\r')
                    line.remove_suffix(1);
                lines.push_back(line);
                start = end + 1;
            }
            return lines;
        }

        auto trim(std::string_view s) -> std::string_view
        {
            auto is_space = [] (char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
            while (! s.empty() && is_space(s.front()))
                s.remove_prefix(1);
            while (! s.empty() && is_space(s.back()))
                s.remove_suffix(1);
            return s;
        }

        auto parse_int(std::string_view token, std::size_t line_number) -> long long
        {
            long long value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0)
                throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(line_number) + ": expected a non-negative integer, got '" + std::string(token) + "'",
                        line_number);
            return value;
        }

        auto tokens(std::string_view line) -> std::vector<std::string_view>
        {
            std::vector<std::string_view> result;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ','))
                    ++i;
                std::size_t j = i;
                while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',')
                    ++j;
                if (j > i)
                    result.push_back(line.substr(i, j - i));
                i = j;
            }
            return result;
        }
    }

    auto to_graph6(const Graph & g) -> std::string
    {
        int n = g.order();
        std::string out = header_bytes(n);
        int acc = 0, nbits = 0;
        for (int j = 1 ; j < n ; ++j)
            for (int i = 0 ; i < j ; ++i) {
                acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
                if (++nbits == 6) {
                    out.push_back(static_cast<char>(acc + graph6_bias));
                    acc = 0;
                    nbits = 0;
                }
            }
        if (nbits > 0)
            out.push_back(static_cast<char>((acc << (6 - nbits)) + graph6_bias));
        return out;
    }

    auto from_graph6(std::string_view text) -> Graph
    {
        if (text.empty())
            throw Error(ErrorCode::malformed_header, "empty graph6 string", 0);

        for (std::size_t i = 0 ; i < text.size() ; ++i) {
            auto c = static_cast<unsigned char>(text[i]);
            if (c < 63 || c > 126)
                throw Error(ErrorCode::invalid_byte, "byte " + std::to_string(c) + " at offset " + std::to_string(i) + " outside 63..126", i);
        }

        auto chunk = [&] (std::size_t i) { return static_cast<long long>(static_cast<unsigned char>(text[i]) - graph6_bias); };

        long long n = 0;
        std::size_t body = 0;
        if (static_cast<unsigned char>(text[0]) != 126) {
            n = chunk(0);
            body = 1;
        }
        else if (text.size() >= 2 && static_cast<unsigned char>(text[1]) == 126) {
            if (text.size() < 8)
                throw Error(ErrorCode::malformed_header, "incomplete eight-byte header", 0);
            for (std::size_t i = 2 ; i < 8 ; ++i)
                n = (n << 6) | chunk(i);
            if (n <= 258047)
                throw Error(ErrorCode::malformed_header, "non-minimal eight-byte header", 0);
            throw Error(ErrorCode::order_out_of_range, "order " + std::to_string(n) + " exceeds 250", 0);
        }
        else {
            if (text.size() < 4)
                throw Error(ErrorCode::malformed_header, "incomplete four-byte header", 0);
            n = (chunk(1) << 12) | (chunk(2) << 6) | chunk(3);
            if (n <= 62)
                throw Error(ErrorCode::malformed_header, "non-minimal four-byte header for order " + std::to_string(n), 0);
            body = 4;
        }

        if (n < 1 || n > max_order)
            throw Error(ErrorCode::order_out_of_range, "order " + std::to_string(n) + " outside 1..250", 0);

        long long bits = n * (n - 1) / 2;
        auto expected = static_cast<std::size_t>((bits + 5) / 6);
        if (text.size() - body < expected)
            throw Error(ErrorCode::truncated_body,
                    "body has " + std::to_string(text.size() - body) + " bytes, expected " + std::to_string(expected), text.size());
        if (text.size() - body > expected)
            throw Error(ErrorCode::trailing_data, "unexpected bytes after graph6 body", body + expected);

        GraphBuilder b(static_cast<int>(n));
        long long k = 0;
        for (int j = 1 ; j < n ; ++j)
            for (int i = 0 ; i < j ; ++i, ++k) {
                auto byte = chunk(body + static_cast<std::size_t>(k / 6));
                if ((byte >> (5 - k % 6)) & 1)
                    b.add_edge(i, j);
            }

        if (bits % 6 != 0) {
            auto last = chunk(text.size() - 1);
            int pad = static_cast<int>(6 - bits % 6);
            if (last & ((1 << pad) - 1))
                throw Error(ErrorCode::nonzero_padding, "nonzero padding bits in final byte", text.size() - 1);
        }

        return std::move(b).build();
    }

    auto from_adjacency_matrix(std::string_view text) -> Graph
    {
        std::vector<std::vector<int>> rows;
        std::size_t line_number = 0;
        for (auto line : split_lines(text)) {
            ++line_number;
            line = trim(line);
            if (line.empty())
                continue;
            std::vector<int> row;
            for (char c : line) {
                if (c == '0' || c == '1')
                    row.push_back(c - '0');
                else if (c != ' ' && c != '\t' && c != ',')
                    throw Error(ErrorCode::parse_error,
                            "line " + std::to_string(line_number) + ": unexpected character '" + std::string(1, c) + "'", line_number);
            }
            rows.push_back(std::move(row));
        }

        auto n = static_cast<long long>(rows.size());
        if (n < 1 || n > max_order)
            throw Error(ErrorCode::order_out_of_range, "matrix order " + std::to_string(n) + " outside 1..250");
        for (std::size_t r = 0 ; r < rows.size() ; ++r)
            if (static_cast<long long>(rows[r].size()) != n)
                throw Error(ErrorCode::not_square,
                        "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n), r + 1);

        GraphBuilder b(static_cast<int>(n));
        for (int i = 0 ; i < n ; ++i) {
            if (rows[i][i])
                throw Error(ErrorCode::nonzero_diagonal, "nonzero diagonal entry at row " + std::to_string(i), i + 1);
            for (int j = i + 1 ; j < n ; ++j) {
                if (rows[i][j] != rows[j][i])
                    throw Error(ErrorCode::not_symmetric,
                            "entries (" + std::to_string(i) + ", " + std::to_string(j) + ") and (" + std::to_string(j) + ", " + std::to_string(i) + ") differ", i + 1);
                if (rows[i][j])
                    b.add_edge(i, j);
            }
        }
        return std::move(b).build();
    }

    auto to_adjacency_matrix(const Graph & g) -> std::string
    {
        std::string out;
        for (int i = 0 ; i < g.order() ; ++i) {
            for (int j = 0 ; j < g.order() ; ++j) {
                if (j > 0)
                    out.push_back(' ');
                out.push_back(g.adjacent(i, j) ? '1' : '0');
            }
            out.push_back('\n');
        }
        return out;
    }

    auto from_edge_list(std::string_view text) -> Graph
    {
        std::optional<long long> declared;
        std::vector<std::pair<long long, long long>> edges;
        std::vector<std::size_t> edge_lines;
        bool first = true;
        std::size_t line_number = 0;

        for (auto line : split_lines(text)) {
            ++line_number;
            line = trim(line);
            if (line.empty())
                continue;
            if (first && line.starts_with("n=")) {
                declared = parse_int(trim(line.substr(2)), line_number);
                first = false;
                continue;
            }
            first = false;
            auto toks = tokens(line);
            if (toks.size() != 2)
                throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(line_number) + ": expected two endpoints", line_number);
            edges.emplace_back(parse_int(toks[0], line_number), parse_int(toks[1], line_number));
            edge_lines.push_back(line_number);
        }

        long long n = 0;
        if (declared)
            n = *declared;
        else
            for (auto [u, v] : edges)
                n = std::max({n, u + 1, v + 1});

        if (n < 1 || n > max_order)
            throw Error(ErrorCode::order_out_of_range, "order " + std::to_string(n) + " outside 1..250");

        GraphBuilder b(static_cast<int>(n));
        for (std::size_t e = 0 ; e < edges.size() ; ++e) {
            auto [u, v] = edges[e];
            if (u >= n || v >= n)
                throw Error(ErrorCode::vertex_out_of_range,
                        "line " + std::to_string(edge_lines[e]) + ": endpoint outside [0, " + std::to_string(n) + ")", edge_lines[e]);
            if (u == v)
                throw Error(ErrorCode::loop_rejected,
                        "line " + std::to_string(edge_lines[e]) + ": loop at vertex " + std::to_string(u), edge_lines[e]);
            b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
        return std::move(b).build();
    }

    auto to_edge_list(const Graph & g) -> std::string
    {
        std::string out = "n=" + std::to_string(g.order()) + "\n";
        for (auto [u, v] : g.edges())
            out += std::to_string(u) + " " + std::to_string(v) + "\n";
        return out;
    }

    auto parse_format_name(std::string_view name) -> GraphFormat
    {
        if (name == "graph6")
            return GraphFormat::graph6;
        if (name == "adjacency_matrix" || name == "adjacency-matrix")
            return GraphFormat::adjacency_matrix;
        if (name == "edge_list" || name == "edge-list")
            return GraphFormat::edge_list;
        throw Error(ErrorCode::invalid_argument, "unknown graph format '" + std::string(name) + "'");
    }

    auto parse_graph(GraphFormat format, std::string_view text) -> Graph
    {
        switch (format) {
            case GraphFormat::graph6: return from_graph6(trim(text));
            case GraphFormat::adjacency_matrix: return from_adjacency_matrix(text);
            case GraphFormat::edge_list: return from_edge_list(text);
        }
        throw Error(ErrorCode::invalid_argument, "unknown graph format");
    }
}
