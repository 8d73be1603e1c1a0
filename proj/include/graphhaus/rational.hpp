#ifndef GRAPHHAUS_RATIONAL_HPP
#define GRAPHHAUS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace graphhaus
{
    using BigInt = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    /// "p" or "p/q" in lowest terms.
    auto to_string(const Rational & r) -> std::string;

    /// Accepts integers, "p/q" and finite decimals such as "2.5". Throws
    /// Error(parse_error) otherwise.
    auto parse_rational(std::string_view text) -> Rational;

    /// Exact decimal rendering when the denominator has only factors 2 and
    /// 5; otherwise "p/q".
    auto to_decimal_string(const Rational & r) -> std::string;
}

#endif
