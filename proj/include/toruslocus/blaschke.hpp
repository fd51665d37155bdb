#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toruslocus/laurent.hpp"
#include "toruslocus/roots.hpp"

namespace toruslocus {

enum class MapStatus { proven, sampled, unverified };

/// Rational map r = numerator/denominator intended to send the torus into the
/// unit circle. `proven` means the exact identity holds: the denominator is a
/// unit-monomial associate of star(numerator), which forces |r| = 1 on the
/// torus away from poles.
struct CircleMap {
    LaurentPoly numerator{1};
    LaurentPoly denominator{1};
    MapStatus verified = MapStatus::unverified;
};

namespace detail {

/// Clear the monomial content: shift so every variable's minimum exponent is
/// zero. Changes the map only by a monomial factor, which the circle-map
/// classification works modulo anyway.
inline LaurentPoly clear_monomial(const LaurentPoly& p) {
    return p.shifted(-p.min_exponents());
}

/// Coefficient-wise conjugation (exponents untouched): z |-> conj(p(conj z)).
inline LaurentPoly conj_coeffs(const LaurentPoly& p) {
    LaurentPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.conj());
    return r;
}

}  // namespace detail

/// Lemma-3.2 construction: conj(p(conj z)) / p(z^-1), cleared to polynomial
/// form. Circle-preserving by construction, hence verified = proven.
inline CircleMap make_circle_map(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("make_circle_map: zero polynomial");
    CircleMap m;
    LaurentPoly num = detail::conj_coeffs(p);
    m.numerator = detail::clear_monomial(num);
    m.denominator = detail::clear_monomial(star(num));  // star(num) = p(z^-1)
    m.verified = MapStatus::proven;
    return m;
}

/// Exact expansion of a Blaschke product with Gaussian-rational zeros:
/// numerator prod (z - a_k), denominator prod (1 - conj(a_k) z). Proven by
/// construction: star(num) = z^-m * den.
inline CircleMap expand_factors(const std::vector<GaussianRational>& alphas) {
    CircleMap m;
    LaurentPoly num = LaurentPoly::constant(1, GaussianRational(1));
    LaurentPoly den = num;
    const LaurentPoly zvar = LaurentPoly::variable(1, 0);
    for (const auto& a : alphas) {
        num = num * (zvar - LaurentPoly::constant(1, a));
        den = den * (LaurentPoly::constant(1, GaussianRational(1)) -
                     LaurentPoly::constant(1, a.conj()) * zvar);
    }
    m.numerator = std::move(num);
    m.denominator = std::move(den);
    m.verified = MapStatus::proven;
    return m;
}

struct VerifyResult {
    enum class Status { proven, refuted, unknown } status = Status::unknown;
    std::optional<AssociateWitness> witness;          // proven: den = c z^t star(num)
    std::optional<std::vector<Complex>> counterexample;
    double deviation = 0.0;                           // ||r(sample)| - 1| at the counterexample
    std::string note;
};

namespace detail {

/// Dense univariate polynomial over Q(i), degree-0-first, for exact GCD work.
using UniPoly = std::vector<GaussianRational>;

inline UniPoly to_unipoly(const LaurentPoly& p) {
    LaurentPoly q = clear_monomial(p);
    int deg = q.max_exponents()[0];
    UniPoly out(static_cast<size_t>(deg) + 1, GaussianRational(0));
    for (const auto& [e, c] : q.terms()) out[static_cast<size_t>(e[0])] = c;
    return out;
}

inline void trim(UniPoly& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

inline UniPoly unipoly_rem(UniPoly a, const UniPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !(a.size() == 1 && a[0].is_zero())) {
        GaussianRational q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t k = 0; k < b.size(); ++k) a[off + k] -= q * b[k];
        a.pop_back();
        trim(a);
    }
    if (a.empty()) a.assign(1, GaussianRational(0));  // exact-division case
    return a;
}

inline UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!(b.size() == 1 && b[0].is_zero())) {
        UniPoly r = unipoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    GaussianRational lead = a.back();
    for (auto& c : a) c = c / lead;  // monic
    return a;
}

inline UniPoly unipoly_div(UniPoly a, const UniPoly& b) {
    trim(a);
    UniPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, GaussianRational(0));
    while (a.size() >= b.size() && !(a.size() == 1 && a[0].is_zero())) {
        GaussianRational f = a.back() / b.back();
        size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t k = 0; k < b.size(); ++k) a[off + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return q;
}

inline LaurentPoly from_unipoly(const UniPoly& p) {
    LaurentPoly out(1);
    for (size_t k = 0; k < p.size(); ++k)
        out.add_term(ExponentVector{static_cast<int>(k)}, p[k]);
    return out;
}

/// Deterministic quasi-random torus samples (per-variable golden-ratio-style
/// increments, so no sample pattern aligns with root symmetries).
inline std::vector<Complex> torus_sample(int n, int k) {
    static const double inc[4] = {0.6180339887498949, 0.4142135623730951,
                                  0.3247179572447460, 0.2360679774997897};
    std::vector<Complex> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double frac = std::fmod(0.137 + (k + 1) * inc[i % 4] * (1.0 + 0.25 * i), 1.0);
        s[static_cast<size_t>(i)] = std::polar(1.0, 2.0 * M_PI * frac);
    }
    return s;
}

}  // namespace detail

/// Decides whether num/den maps the torus into the unit circle. After monomial
/// and (in one variable) exact-GCD reduction, the map is a circle map iff
/// den = beta z^t star(num) with |beta| = 1 — checked exactly. A failed
/// identity is confirmed by a sampled counterexample with ||r| - 1| > 1e-6;
/// if no sample violates (possible when the reducer cannot reach coprime form
/// in several variables), the verdict is an honest unknown.
inline VerifyResult verify_circle_map(const LaurentPoly& num_in, const LaurentPoly& den_in) {
    if (den_in.is_zero()) throw std::domain_error("verify_circle_map: zero denominator");
    VerifyResult out;

    if (num_in.vars() != den_in.vars())
        throw std::invalid_argument("verify_circle_map: variable-count mismatch");
    const int n = num_in.vars();

    if (num_in.is_zero()) {
        out.status = VerifyResult::Status::refuted;
        out.counterexample = detail::torus_sample(n, 0);
        out.deviation = 1.0;
        out.note = "numerator is identically zero";
        return out;
    }

    LaurentPoly num = detail::clear_monomial(num_in);
    LaurentPoly den = detail::clear_monomial(den_in);
    bool coprime = true;
    if (n == 1) {
        detail::UniPoly a = detail::to_unipoly(num), b = detail::to_unipoly(den);
        detail::UniPoly g = detail::unipoly_gcd(a, b);
        if (g.size() > 1) {
            num = detail::from_unipoly(detail::unipoly_div(a, g));
            den = detail::from_unipoly(detail::unipoly_div(b, g));
        }
    } else {
        coprime = false;  // only monomial/content reduction available
    }

    std::optional<AssociateWitness> w = associates(star(num), den);
    if (w && w->unit_modulus) {
        out.status = VerifyResult::Status::proven;
        out.witness = w;
        return out;
    }

    // Identity failed (or |beta| != 1): hunt for a concrete violation.
    const double den_scale = coeff_magnitude_sum(den);
    double worst = 0.0;
    for (int k = 0; k < 256; ++k) {
        std::vector<Complex> s = detail::torus_sample(n, k);
        Complex dv = eval(den, s);
        if (std::abs(dv) < 1e-6 * den_scale) continue;  // too near a pole
        Complex nv = eval(num, s);
        double dev = std::abs(std::abs(nv / dv) - 1.0);
        if (dev > worst) {
            worst = dev;
            out.counterexample = s;
        }
        if (dev > 1e-6) {
            out.status = VerifyResult::Status::refuted;
            out.counterexample = s;
            out.deviation = dev;
            return out;
        }
    }
    out.deviation = worst;
    out.status = VerifyResult::Status::unknown;
    out.note = coprime ? "identity fails but no sample deviates above 1e-6"
                       : "multivariate input not reduced to coprime form";
    return out;
}

inline VerifyResult verify_circle_map(const CircleMap& m) {
    return verify_circle_map(m.numerator, m.denominator);
}

/// Blaschke data of a one-variable proven circle map:
/// r(z) = unit * z^power * prod_k (z - alphas[k]) / (1 - conj(alphas[k]) z).
struct BlaschkeFactors {
    std::vector<Complex> alphas;
    Complex unit{1.0, 0.0};
    int power = 0;
    double pair_error = 0.0;  // worst |den_root - 1/conj(alpha)| over the matching
};

/// Factor a proven one-variable circle map into Blaschke form. Numerator
/// roots give the alphas; each must find the reciprocal-conjugate partner
/// among the denominator roots. On-circle alphas are self-partnered — the
/// factor degenerates to the constant -alpha, folded into `unit`.
inline BlaschkeFactors blaschke_factor(const CircleMap& m, double circle_tol = 1e-9) {
    if (m.verified != MapStatus::proven)
        throw std::domain_error("blaschke_factor: map is not proven");
    if (m.numerator.vars() != 1 || m.denominator.vars() != 1)
        throw std::invalid_argument("blaschke_factor: expected one variable");
    if (m.numerator.is_zero()) throw std::domain_error("blaschke_factor: zero numerator");

    FiberPoly nf, df;
    {
        LaurentPoly num = detail::clear_monomial(m.numerator);
        LaurentPoly den = detail::clear_monomial(m.denominator);
        nf.coeffs.resize(static_cast<size_t>(num.max_exponents()[0]) + 1, Complex(0, 0));
        for (const auto& [e, c] : num.terms())
            nf.coeffs[static_cast<size_t>(e[0])] = c.to_complex();
        df.coeffs.resize(static_cast<size_t>(den.max_exponents()[0]) + 1, Complex(0, 0));
        for (const auto& [e, c] : den.terms())
            df.coeffs[static_cast<size_t>(e[0])] = c.to_complex();
    }

    RootSet nr = roots(nf.coeffs);
    RootSet dr = roots(df.coeffs);

    std::vector<Complex> num_roots, den_roots;
    for (size_t k = 0; k < nr.roots.size(); ++k)
        num_roots.insert(num_roots.end(), static_cast<size_t>(nr.multiplicities[k]), nr.roots[k]);
    for (size_t k = 0; k < dr.roots.size(); ++k)
        den_roots.insert(den_roots.end(), static_cast<size_t>(dr.multiplicities[k]), dr.roots[k]);

    BlaschkeFactors out;
    out.power = nr.zero_roots_removed - dr.zero_roots_removed;

    std::vector<char> used(den_roots.size(), 0);
    Complex lead_ratio = nf.coeffs.back() / df.coeffs.back();
    Complex unit_acc = lead_ratio;

    for (const Complex& a : num_roots) {
        if (std::abs(std::abs(a) - 1.0) <= circle_tol) {
            // Degenerate factor: (z - a)/(1 - conj(a) z) = -a when |a| = 1.
            // Its partner root in the denominator is a itself.
            Complex partner = a;
            double bestd = 1e300;
            size_t bestj = den_roots.size();
            for (size_t j = 0; j < den_roots.size(); ++j)
                if (!used[j] && std::abs(den_roots[j] - partner) < bestd) {
                    bestd = std::abs(den_roots[j] - partner);
                    bestj = j;
                }
            if (bestj == den_roots.size() || bestd > 1e-6)
                throw std::runtime_error(
                    "blaschke_factor: on-circle numerator root has no denominator partner "
                    "(worst distance " +
                    std::to_string(bestd) + ")");
            used[bestj] = 1;
            out.pair_error = std::max(out.pair_error, bestd);
            // Monic-to-Blaschke den normalization contributes -conj(a); the
            // degenerate factor itself equals the constant -a. Net conj(a)*a.
            unit_acc *= std::conj(a) * a;
            continue;
        }
        Complex partner = 1.0 / std::conj(a);
        double bestd = 1e300;
        size_t bestj = den_roots.size();
        for (size_t j = 0; j < den_roots.size(); ++j)
            if (!used[j] && std::abs(den_roots[j] - partner) < bestd) {
                bestd = std::abs(den_roots[j] - partner);
                bestj = j;
            }
        if (bestj == den_roots.size() || bestd > 1e-6)
            throw std::runtime_error(
                "blaschke_factor: numerator root " + std::to_string(a.real()) + "+" +
                std::to_string(a.imag()) + "i has no reciprocal-conjugate denominator root "
                "(worst distance " + std::to_string(bestd) + ")");
        used[bestj] = 1;
        out.pair_error = std::max(out.pair_error, bestd);
        out.alphas.push_back(a);
        // Monic den factor (z - 1/conj(a)) = -(1/conj(a))(1 - conj(a) z), so
        // swapping it for the Blaschke denominator multiplies r by -conj(a).
        unit_acc *= -std::conj(a);
    }
    for (size_t j = 0; j < den_roots.size(); ++j)
        if (!used[j])
            throw std::runtime_error("blaschke_factor: unmatched denominator root remains");

    // unit_acc = lead(num)/lead(den) * prod(-conj(alpha_k)), with degenerate
    // factors' constant values folded in: exactly the constant making
    // r = unit * z^power * prod of the remaining Blaschke factors.
    double drift = std::abs(std::abs(unit_acc) - 1.0);
    if (drift > 1e-6)
        throw std::runtime_error("blaschke_factor: prefactor modulus drifts from 1 by " +
                                 std::to_string(drift));
    out.unit = unit_acc / std::abs(unit_acc);
    return out;
}

/// Evaluate a Blaschke factorization at a point (used by round-trip checks).
inline Complex eval_blaschke(const BlaschkeFactors& f, Complex z) {
    Complex acc = f.unit * complex_ipow(z, f.power);
    for (const Complex& a : f.alphas) acc *= (z - a) / (1.0 - std::conj(a) * z);
    return acc;
}

}  // namespace toruslocus
