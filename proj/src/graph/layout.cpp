#include <graphhaus/layout.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace graphhaus
{
    namespace
    {
        // mt19937_64's output sequence is fixed by the standard; the real
        // distributions are not, so convert by hand.
        auto unit(std::mt19937_64 & rng) -> double
        {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
    }

    auto normalise_positions(std::vector<std::pair<double, double>> positions, double margin) -> std::vector<std::pair<double, double>>
    {
        if (positions.empty())
            return positions;

        double min_x = positions[0].first, max_x = min_x;
        double min_y = positions[0].second, max_y = min_y;
        for (auto [x, y] : positions) {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }

        double extent = std::max(max_x - min_x, max_y - min_y);
        if (! (extent > 0.0) || ! std::isfinite(extent)) {
            for (auto & p : positions)
                p = {0.5, 0.5};
            return positions;
        }

        double scale = (1.0 - 2.0 * margin) / extent;
        double off_x = 0.5 - scale * (min_x + max_x) / 2.0;
        double off_y = 0.5 - scale * (min_y + max_y) / 2.0;
        for (auto & [x, y] : positions) {
            x = std::clamp(off_x + scale * x, 0.0, 1.0);
            y = std::clamp(off_y + scale * y, 0.0, 1.0);
        }
        return positions;
    }

    auto spring_layout(const Graph & g, int iterations, std::uint64_t seed) -> Embedding
    {
        if (iterations < 1)
            throw Error(ErrorCode::invalid_argument, "spring_layout needs at least one iteration");

        int n = g.order();
        if (n == 1)
            return Embedding{{{0.5, 0.5}}};

        std::mt19937_64 rng(seed);
        std::vector<double> x(n), y(n);
        for (int v = 0 ; v < n ; ++v) {
            x[v] = unit(rng);
            y[v] = unit(rng);
        }

        const double k = std::sqrt(1.0 / n);
        double temperature = 0.1;
        const double cooling = temperature / (iterations + 1);
        std::vector<double> dx(n), dy(n);

        for (int it = 0 ; it < iterations ; ++it) {
            std::fill(dx.begin(), dx.end(), 0.0);
            std::fill(dy.begin(), dy.end(), 0.0);

            for (int u = 0 ; u < n ; ++u)
                for (int v = u + 1 ; v < n ; ++v) {
                    double ex = x[u] - x[v], ey = y[u] - y[v];
                    double d2 = ex * ex + ey * ey;
                    if (d2 < 1e-18) {
                        // coincident: push apart along a seeded direction
                        double angle = 2.0 * M_PI * unit(rng);
                        ex = std::cos(angle) * 1e-6;
                        ey = std::sin(angle) * 1e-6;
                        d2 = 1e-12;
                    }
                    double d = std::sqrt(d2);
                    double force = k * k / d;
                    if (g.adjacent(u, v))
                        force -= d2 / k;
                    double fx = ex / d * force, fy = ey / d * force;
                    dx[u] += fx;
                    dy[u] += fy;
                    dx[v] -= fx;
                    dy[v] -= fy;
                }

            for (int v = 0 ; v < n ; ++v) {
                double len = std::sqrt(dx[v] * dx[v] + dy[v] * dy[v]);
                if (len > 0.0) {
                    double step = std::min(len, temperature);
                    x[v] += dx[v] / len * step;
                    y[v] += dy[v] / len * step;
                }
            }
            temperature -= cooling;
        }

        std::vector<std::pair<double, double>> positions(n);
        for (int v = 0 ; v < n ; ++v)
            positions[v] = {x[v], y[v]};
        return Embedding{normalise_positions(std::move(positions))};
    }
}
