#ifndef RIPS_MORSE_RATIONAL_HPP
#define RIPS_MORSE_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

namespace rips_morse {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    return q.str();
}

inline Rational parse_rational(std::string_view text)
{
    try {
        return Rational(std::string(text));
    } catch (const std::exception&) {
        throw InputError("not a rational number: '" + std::string(text) + "'");
    }
}

inline BigInt floor(const Rational& q)
{
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num)
        quot -= 1;
    return quot;
}

inline BigInt ceil(const Rational& q)
{
    return -floor(-q);
}

/// Narrowing conversion; throws BoundExceededError if the value does not fit.
inline std::int64_t to_int64(const BigInt& z)
{
    if (z > BigInt(INT64_MAX) || z < BigInt(INT64_MIN))
        throw BoundExceededError("integer " + z.str() + " exceeds 64-bit range");
    return z.convert_to<std::int64_t>();
}

/// Nearest integer; exact halves round toward negative infinity.
inline BigInt round_half_down(const Rational& q)
{
    return ceil(q - Rational(1, 2));
}

} // namespace rips_morse

#endif // RIPS_MORSE_RATIONAL_HPP
