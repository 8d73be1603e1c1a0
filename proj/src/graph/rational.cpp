#include <graphhaus/rational.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <cctype>

namespace graphhaus
{
    auto to_string(const Rational & r) -> std::string
    {
        auto num = boost::multiprecision::numerator(r);
        auto den = boost::multiprecision::denominator(r);
        if (den == 1)
            return num.str();
        return num.str() + "/" + den.str();
    }

    namespace
    {
        auto parse_digits(std::string_view text, std::string_view whole) -> BigInt
        {
            if (text.empty())
                throw Error(ErrorCode::parse_error, "malformed number '" + std::string(whole) + "'");
            for (char c : text)
                if (! std::isdigit(static_cast<unsigned char>(c)))
                    throw Error(ErrorCode::parse_error, "malformed number '" + std::string(whole) + "'");
            return BigInt(std::string(text));
        }
    }

    auto parse_rational(std::string_view text) -> Rational
    {
        std::string_view whole = text;
        bool negative = false;
        if (! text.empty() && (text.front() == '-' || text.front() == '+')) {
            negative = text.front() == '-';
            text.remove_prefix(1);
        }

        Rational result;
        if (auto slash = text.find('/') ; slash != std::string_view::npos) {
            BigInt den = parse_digits(text.substr(slash + 1), whole);
            if (den == 0)
                throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(whole) + "'");
            result = Rational(parse_digits(text.substr(0, slash), whole), den);
        }
        else if (auto dot = text.find('.') ; dot != std::string_view::npos) {
            auto int_part = text.substr(0, dot);
            auto frac_part = text.substr(dot + 1);
            if (int_part.empty() && frac_part.empty())
                throw Error(ErrorCode::parse_error, "malformed number '" + std::string(whole) + "'");
            BigInt scale = 1;
            for (std::size_t i = 0 ; i < frac_part.size() ; ++i)
                scale *= 10;
            BigInt ip = int_part.empty() ? BigInt(0) : parse_digits(int_part, whole);
            BigInt fp = frac_part.empty() ? BigInt(0) : parse_digits(frac_part, whole);
            result = Rational(ip * scale + fp, scale);
        }
        else
            result = Rational(parse_digits(text, whole));

        return negative ? Rational(-result) : result;
    }

    auto to_decimal_string(const Rational & r) -> std::string
    {
        BigInt num = boost::multiprecision::numerator(r);
        BigInt den = boost::multiprecision::denominator(r);
        if (den == 1)
            return num.str();

        BigInt rest = den;
        int twos = 0, fives = 0;
        while (rest % 2 == 0) {
            rest /= 2;
            ++twos;
        }
        while (rest % 5 == 0) {
            rest /= 5;
            ++fives;
        }
        if (rest != 1)
            return to_string(r);

        int digits = std::max(twos, fives);
        BigInt scale = 1;
        for (int i = 0 ; i < digits ; ++i)
            scale *= 10;
        bool negative = num < 0;
        BigInt scaled = (negative ? BigInt(-num) : num) * (scale / den);
        std::string s = scaled.str();
        if (static_cast<int>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
        return negative ? "-" + s : s;
    }
}
