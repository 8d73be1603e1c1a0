#ifndef GRAPHHAUS_LAYOUT_HPP
#define GRAPHHAUS_LAYOUT_HPP

#include <graphhaus/graph.hpp>

#include <cstdint>

namespace graphhaus
{
    /// Force-directed layout (all-pairs repulsion, attraction along edges),
    /// rescaled into the unit square with a 5% margin. Deterministic for a
    /// given (graph, iterations, seed).
    auto spring_layout(const Graph & g, int iterations = 300, std::uint64_t seed = 0x5eed) -> Embedding;

    /// Uniform rescale of the bounding box into [margin, 1 - margin]^2,
    /// centred along the shorter axis. Coincident points land on (0.5, 0.5).
    auto normalise_positions(std::vector<std::pair<double, double>> positions, double margin = 0.05) -> std::vector<std::pair<double, double>>;
}

#endif
