#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace toruslocus {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, int exp) {
    if (exp == 0) return Rational(1);
    if (exp < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return Rational(1) / rational_pow(base, -exp);
    }
    Rational acc(1), b = base;
    unsigned e = static_cast<unsigned>(exp);
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// Parses "a" or "a/b" with optional leading '-'. Throws on malformed input.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad literal '" + text + "'");
    }
}

}  // namespace toruslocus
