#ifndef GRAPHHAUS_BITSET_HPP
#define GRAPHHAUS_BITSET_HPP

#include <array>
#include <bit>
#include <cstdint>

namespace graphhaus
{
    /// Fixed-width set of vertex indices in [0, 256). One of these is one
    /// adjacency row; all the hot kernels reduce to word operations on it.
    class VertexSet
    {
    public:
        static constexpr int capacity = 256;
        static constexpr int words = capacity / 64;

        constexpr VertexSet() = default;

        /// The set {0, ..., n - 1}.
        static constexpr auto first_n(int n) -> VertexSet
        {
            VertexSet result;
            for (int w = 0 ; w < words ; ++w) {
                int lo = w * 64;
                if (n >= lo + 64)
                    result._bits[w] = ~std::uint64_t{0};
                else if (n > lo)
                    result._bits[w] = (std::uint64_t{1} << (n - lo)) - 1;
            }
            return result;
        }

        constexpr auto set(int v) -> void { _bits[v >> 6] |= std::uint64_t{1} << (v & 63); }
        constexpr auto reset(int v) -> void { _bits[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
        constexpr auto test(int v) const -> bool { return (_bits[v >> 6] >> (v & 63)) & 1; }

        constexpr auto count() const -> int
        {
            int c = 0;
            for (auto w : _bits)
                c += std::popcount(w);
            return c;
        }

        constexpr auto empty() const -> bool
        {
            for (auto w : _bits)
                if (w)
                    return false;
            return true;
        }

        /// Smallest member, or capacity if empty.
        constexpr auto first() const -> int
        {
            for (int w = 0 ; w < words ; ++w)
                if (_bits[w])
                    return w * 64 + std::countr_zero(_bits[w]);
            return capacity;
        }

        /// Smallest member strictly greater than v, or capacity.
        constexpr auto next(int v) const -> int
        {
            ++v;
            if (v >= capacity)
                return capacity;
            int w = v >> 6;
            std::uint64_t masked = _bits[w] & (~std::uint64_t{0} << (v & 63));
            if (masked)
                return w * 64 + std::countr_zero(masked);
            for (++w ; w < words ; ++w)
                if (_bits[w])
                    return w * 64 + std::countr_zero(_bits[w]);
            return capacity;
        }

        constexpr auto intersection_count(const VertexSet & other) const -> int
        {
            int c = 0;
            for (int w = 0 ; w < words ; ++w)
                c += std::popcount(_bits[w] & other._bits[w]);
            return c;
        }

        constexpr auto intersects(const VertexSet & other) const -> bool
        {
            for (int w = 0 ; w < words ; ++w)
                if (_bits[w] & other._bits[w])
                    return true;
            return false;
        }

        constexpr auto operator&=(const VertexSet & o) -> VertexSet &
        {
            for (int w = 0 ; w < words ; ++w)
                _bits[w] &= o._bits[w];
            return *this;
        }

        constexpr auto operator|=(const VertexSet & o) -> VertexSet &
        {
            for (int w = 0 ; w < words ; ++w)
                _bits[w] |= o._bits[w];
            return *this;
        }

        /// Set difference.
        constexpr auto operator-=(const VertexSet & o) -> VertexSet &
        {
            for (int w = 0 ; w < words ; ++w)
                _bits[w] &= ~o._bits[w];
            return *this;
        }

        friend constexpr auto operator&(VertexSet a, const VertexSet & b) -> VertexSet { return a &= b; }
        friend constexpr auto operator|(VertexSet a, const VertexSet & b) -> VertexSet { return a |= b; }
        friend constexpr auto operator-(VertexSet a, const VertexSet & b) -> VertexSet { return a -= b; }

        constexpr auto operator==(const VertexSet &) const -> bool = default;

        auto word(int w) const -> std::uint64_t { return _bits[w]; }

        template <typename F>
        constexpr auto for_each(F && f) const -> void
        {
            for (int w = 0 ; w < words ; ++w) {
                std::uint64_t bits = _bits[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    f(w * 64 + b);
                }
            }
        }

    private:
        std::array<std::uint64_t, words> _bits{};
    };
}

#endif
