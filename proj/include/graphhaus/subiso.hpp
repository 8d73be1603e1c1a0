#ifndef GRAPHHAUS_SUBISO_HPP
#define GRAPHHAUS_SUBISO_HPP

#include <graphhaus/deadline.hpp>
#include <graphhaus/graph.hpp>

#include <string_view>
#include <vector>

namespace graphhaus::subiso
{
    enum class Mode
    {
        induced,
        subgraph
    };

    auto parse_mode(std::string_view text) -> Mode;
    auto to_string(Mode mode) -> std::string_view;

    enum class MatchStatus
    {
        found,
        not_found,
        timed_out
    };

    struct MatchOutcome
    {
        MatchStatus status = MatchStatus::not_found;
        /// mapping[p] is the target vertex assigned to pattern vertex p; empty unless found.
        std::vector<Vertex> mapping;
        std::uint64_t states = 0;
    };

    /// VF2 state-space search. Target candidates are tried in order of
    /// decreasing target degree. A pattern larger than the target is simply
    /// not found.
    auto find_embedding(const Graph & pattern, const Graph & target, Mode mode,
            const Deadline & deadline = Deadline::never()) -> MatchOutcome;

    enum class Containment
    {
        yes,
        no,
        unknown
    };

    auto contains(const Graph & pattern, const Graph & target, Mode mode,
            const Deadline & deadline = Deadline::never()) -> Containment;

    /// Direct recheck of a witness: injective, edge-preserving, and in
    /// induced mode non-edge-preserving.
    auto verify_embedding(const Graph & pattern, const Graph & target, Mode mode,
            const std::vector<Vertex> & mapping) -> bool;
}

#endif
