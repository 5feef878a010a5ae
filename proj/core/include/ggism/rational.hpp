#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggism {

/// Arbitrary-precision rational used for all exact arithmetic: disutility
/// tables, GGI weights and values, and the reduction's n_c^{-j} terms, none of
/// which are representable in floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);              // v = mant * 2^exp, |mant| in [1/2, 1)
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));  // exact 53-bit integer
    Rational r(scaled);
    int e = exp - 53;
    if (e > 0)
        r *= Rational(BigInt(1) << e);
    else if (e < 0)
        r /= Rational(BigInt(1) << -e);
    return r;
}

/// Parses "3", "-7/2" or a decimal like "0.0975" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("invalid rational: '" + text + "'"); };
    std::string s = text;
    bool negative = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from == to) fail();
        BigInt value = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (s[i] < '0' || s[i] > '9') fail();
            value = value * 10 + (s[i] - '0');
        }
        return value;
    };
    Rational result;
    std::size_t slash = s.find('/', pos);
    std::size_t dot = s.find('.', pos);
    if (slash != std::string::npos) {
        BigInt num = digits(pos, slash);
        BigInt den = digits(slash + 1, s.size());
        if (den == 0) fail();
        result = Rational(num, den);
    } else if (dot != std::string::npos) {
        BigInt whole = dot > pos ? digits(pos, dot) : BigInt(0);
        BigInt frac = digits(dot + 1, s.size());
        BigInt scale = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
        result = Rational(whole) + Rational(frac, scale);
    } else {
        result = Rational(digits(pos, s.size()));
    }
    return negative ? -result : result;
}

/// "num/den", or just "num" when integral.
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace ggism
