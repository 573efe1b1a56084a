#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>

#include "hahn/error.hpp"

namespace hahn {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// num/den in lowest terms with positive denominator.
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    return BigRat(num) / BigRat(den);
}

/// Number of bits in |v|; 0 for v == 0.
inline std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<std::size_t>(msb(abs(v))) + 1;
}

/// base^exp for exp >= 0.
inline BigInt pow_nat(const BigInt& base, const BigInt& exp) {
    if (exp < 0) throw UsageError("pow_nat: negative exponent");
    BigInt result = 1;
    BigInt b = base;
    BigInt e = exp;
    while (e > 0) {
        if ((e & 1) != 0) result *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return result;
}

/// ceil(x / y) for y > 0.
inline BigInt ceil_div(const BigInt& x, const BigInt& y) {
    if (y <= 0) throw UsageError("ceil_div: nonpositive divisor");
    BigInt q = x / y;  // truncates toward zero
    if (q * y < x) ++q;
    return q;
}

/// Parses an optionally signed decimal integer; rejects anything else.
inline BigInt parse_bigint(std::string_view text, std::size_t offset = 0) {
    if (text.empty()) throw ParseError("empty integer literal", offset);
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw ParseError("sign without digits", offset);
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9')
            throw ParseError("invalid digit in integer literal", offset + k);
    }
    return BigInt(std::string(text));
}

}  // namespace hahn
