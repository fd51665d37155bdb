#pragma once

#include <complex>
#include <string>

#include "toruslocus/rational.hpp"

namespace toruslocus {

/// Exact element of Q(i): re + im*i with rational parts. All arithmetic is
/// exact; conversion to std::complex<double> is the only lossy operation.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(long r, long i) : re(r), im(i) {}

    static GaussianRational unit_i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    /// |c|^2 = c * conj(c), exact.
    Rational norm2() const { return re * re + im * im; }

    bool is_unit_modulus() const { return norm2() == 1; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n2 = b.norm2();
        if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational num = a * b.conj();
        return {num.re / n2, num.im / n2};
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }
};

inline GaussianRational gaussian_pow(const GaussianRational& base, int exp) {
    if (exp == 0) return GaussianRational(1);
    if (exp < 0) return GaussianRational(1) / gaussian_pow(base, -exp);
    GaussianRational acc(1), b = base;
    unsigned e = static_cast<unsigned>(exp);
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

/// "3", "-1/2", "i", "3*i", "3 + 1/2*i" style rendering; always reparseable.
inline std::string to_string(const GaussianRational& c) {
    if (c.is_zero()) return "0";
    std::string out;
    if (c.re != 0) {
        out += to_string(c.re);
        if (c.im > 0) out += " + ";
        else if (c.im < 0) out += " - ";
    } else if (c.im < 0) {
        out += "-";
    }
    if (c.im != 0) {
        Rational mag = abs(c.im);
        if (mag == 1) out += "i";
        else out += to_string(mag) + "*i";
    }
    return out;
}

}  // namespace toruslocus
