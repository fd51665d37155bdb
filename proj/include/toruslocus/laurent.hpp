#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "toruslocus/gaussian_rational.hpp"

namespace toruslocus {

/// Exponent tuple of a Laurent monomial; entries may be negative.
using ExponentVector = std::vector<int>;

inline int total_degree(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/// Graded-lex order: compare by exponent sum first, then lexicographically.
/// Gives the deterministic term order used for printing and normalization.
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline ExponentVector operator-(const ExponentVector& a) {
    ExponentVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

/// Sparse multivariate Laurent polynomial over Q(i). Zero coefficients are
/// never stored; the zero polynomial has an empty term map.
class LaurentPoly {
public:
    using TermMap = std::map<ExponentVector, GaussianRational, GradedLexLess>;

    explicit LaurentPoly(int n = 1) : n_(check_vars(n)) {}

    static LaurentPoly zero(int n) { return LaurentPoly(n); }

    static LaurentPoly constant(int n, GaussianRational c) {
        LaurentPoly p(n);
        p.add_term(ExponentVector(static_cast<size_t>(n), 0), std::move(c));
        return p;
    }

    static LaurentPoly monomial(int n, GaussianRational c, ExponentVector exps) {
        LaurentPoly p(n);
        if (static_cast<int>(exps.size()) != n)
            throw std::invalid_argument("LaurentPoly::monomial: exponent length mismatch");
        p.add_term(std::move(exps), std::move(c));
        return p;
    }

    /// Single variable z_k as a polynomial.
    static LaurentPoly variable(int n, int k, int power = 1) {
        ExponentVector e(static_cast<size_t>(n), 0);
        e.at(static_cast<size_t>(k)) = power;
        return monomial(n, GaussianRational(1), std::move(e));
    }

    int vars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c*z^e, pruning the entry if the sum cancels.
    void add_term(ExponentVector e, GaussianRational c) {
        if (static_cast<int>(e.size()) != n_)
            throw std::invalid_argument("LaurentPoly: exponent length mismatch");
        if (c.is_zero()) return;
        // try_emplace leaves c intact when the key already exists.
        auto [it, inserted] = terms_.try_emplace(std::move(e), std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Leading term under graded-lex (largest key). Requires nonzero.
    const std::pair<const ExponentVector, GaussianRational>& leading_term() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    /// Per-variable minimum exponent over the support. Requires nonzero.
    ExponentVector min_exponents() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial");
        ExponentVector mins = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < mins.size(); ++i) mins[i] = std::min(mins[i], e[i]);
        return mins;
    }

    ExponentVector max_exponents() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial");
        ExponentVector maxs = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < maxs.size(); ++i) maxs[i] = std::max(maxs[i], e[i]);
        return maxs;
    }

    /// max - min exponent of variable k; 0 when the variable is absent.
    int degree_span(int k) const {
        if (terms_.empty()) return 0;
        int lo = terms_.begin()->first[static_cast<size_t>(k)], hi = lo;
        for (const auto& [e, c] : terms_) {
            lo = std::min(lo, e[static_cast<size_t>(k)]);
            hi = std::max(hi, e[static_cast<size_t>(k)]);
        }
        return hi - lo;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_same_vars(a, b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        check_same_vars(a, b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_same_vars(a, b);
        LaurentPoly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const GaussianRational& c, const LaurentPoly& p) {
        LaurentPoly r(p.n_);
        if (c.is_zero()) return r;
        for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
        return r;
    }

    /// Multiplication by the monomial z^t (exact exponent shift).
    LaurentPoly shifted(const ExponentVector& t) const {
        if (static_cast<int>(t.size()) != n_)
            throw std::invalid_argument("LaurentPoly::shifted: exponent length mismatch");
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + t, c);
        return r;
    }

private:
    static int check_vars(int n) {
        if (n < 1) throw std::invalid_argument("LaurentPoly: variable count must be >= 1");
        return n;
    }
    static void check_same_vars(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("LaurentPoly: variable-count mismatch");
    }

    int n_;
    TermMap terms_;
};

/// Unit monomial beta * z^t with |beta| = 1 exactly.
struct UnitMonomial {
    GaussianRational beta;
    ExponentVector t;
};

/// The conjugate-inversion involution on Laurent polynomials: conjugate every
/// coefficient and negate every exponent. As a function on (C*)^n,
/// star(p)(z) = conj(p(conj(z)^-1)); on the torus this is conj(p(z)).
inline LaurentPoly star(const LaurentPoly& p) {
    LaurentPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(-e, c.conj());
    return r;
}

/// Canonical associate-class representative: exponents shifted so every
/// variable has minimum exponent 0, then scaled so the graded-lex leading
/// coefficient is 1. `scale * z^shift * poly` reconstructs the input exactly.
struct NormalizedPoly {
    LaurentPoly poly;
    GaussianRational scale;
    ExponentVector shift;
};

inline NormalizedPoly normalize(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("normalize: zero polynomial");
    ExponentVector shift = p.min_exponents();
    LaurentPoly shifted = p.shifted(-shift);
    GaussianRational lead = shifted.leading_term().second;
    LaurentPoly scaled = (GaussianRational(1) / lead) * shifted;
    return {std::move(scaled), std::move(lead), std::move(shift)};
}

/// Witness for q = c * z^t * p. `unit_modulus` reports |c| = 1 (exact test).
struct AssociateWitness {
    GaussianRational c;
    ExponentVector t;
    bool unit_modulus = false;
};

/// Tests whether q is an associate of p up to a constant times a monomial.
inline std::optional<AssociateWitness> associates(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero() || q.is_zero()) throw std::domain_error("associates: zero polynomial");
    if (p.vars() != q.vars()) throw std::invalid_argument("associates: variable-count mismatch");
    NormalizedPoly np = normalize(p), nq = normalize(q);
    if (np.poly != nq.poly) return std::nullopt;
    AssociateWitness w;
    w.c = nq.scale / np.scale;
    w.t = nq.shift - np.shift;
    w.unit_modulus = w.c.is_unit_modulus();
    return w;
}

inline std::complex<double> complex_ipow(std::complex<double> z, int e) {
    if (e < 0) return 1.0 / complex_ipow(z, -e);
    std::complex<double> acc(1.0, 0.0);
    unsigned k = static_cast<unsigned>(e);
    while (k) {
        if (k & 1u) acc *= z;
        z *= z;
        k >>= 1u;
    }
    return acc;
}

/// Numeric evaluation. Per-term powers via binary exponentiation; the
/// accumulated rounding error is O(term_count * ulp) relative to the sum of
/// term magnitudes. Throws on a zero coordinate raised to a negative power.
inline std::complex<double> eval(const LaurentPoly& p, std::span<const std::complex<double>> point) {
    if (static_cast<int>(point.size()) != p.vars())
        throw std::invalid_argument("eval: point dimension mismatch");
    std::complex<double> sum(0.0, 0.0);
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> term = c.to_complex();
        for (size_t i = 0; i < point.size(); ++i) {
            if (e[i] == 0) continue;
            if (point[i] == std::complex<double>(0.0, 0.0) && e[i] < 0)
                throw std::domain_error("eval: pole (zero coordinate with negative exponent)");
            term *= complex_ipow(point[i], e[i]);
        }
        sum += term;
    }
    return sum;
}

inline std::complex<double> eval(const LaurentPoly& p, const std::vector<std::complex<double>>& point) {
    return eval(p, std::span<const std::complex<double>>(point));
}

/// Sum of coefficient magnitudes; the natural residual scale for evaluation
/// at torus points, where every monomial has modulus 1.
inline double coeff_magnitude_sum(const LaurentPoly& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s += std::abs(c.to_complex());
    return s;
}

/// Univariate restriction of p with all variables but one pinned; negative
/// powers of the free variable are cleared by a monomial shift (which never
/// discards torus solutions since 0 is not on the torus).
struct FiberPoly {
    std::vector<std::complex<double>> coeffs;  // degree 0 upward, after clearing
    int cleared_exponent = 0;                  // p restricted = w^cleared_exponent * poly(w)
};

inline FiberPoly fiber_restrict(const LaurentPoly& p, std::span<const std::complex<double>> fixed,
                                int free_index) {
    const int n = p.vars();
    if (free_index < 0 || free_index >= n) throw std::invalid_argument("fiber_restrict: bad free index");
    if (static_cast<int>(fixed.size()) != n - 1)
        throw std::invalid_argument("fiber_restrict: expected one fixed value per bound variable");
    if (p.is_zero()) throw std::domain_error("fiber_restrict: zero polynomial");

    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        int d = e[static_cast<size_t>(free_index)];
        if (first) { lo = hi = d; first = false; }
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }

    std::vector<std::complex<double>> coeffs(static_cast<size_t>(hi - lo + 1), {0.0, 0.0});
    double scale = 0.0;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> v = c.to_complex();
        scale += std::abs(v);
        size_t fi = 0;
        for (int i = 0; i < n; ++i) {
            if (i == free_index) continue;
            const std::complex<double>& x = fixed[fi++];
            if (e[static_cast<size_t>(i)] != 0) {
                if (x == std::complex<double>(0.0, 0.0)) {
                    if (e[static_cast<size_t>(i)] < 0)
                        throw std::domain_error("fiber_restrict: pole at fixed coordinate");
                    v = 0.0;
                    break;
                }
                v *= complex_ipow(x, e[static_cast<size_t>(i)]);
            }
        }
        coeffs[static_cast<size_t>(e[static_cast<size_t>(free_index)] - lo)] += v;
    }

    double maxmag = 0.0;
    for (const auto& c : coeffs) maxmag = std::max(maxmag, std::abs(c));
    if (maxmag <= 1e-13 * scale)
        throw std::domain_error("fiber_restrict: restriction is (numerically) identically zero");
    return {std::move(coeffs), lo};
}

inline FiberPoly fiber_restrict(const LaurentPoly& p, const std::vector<std::complex<double>>& fixed,
                                int free_index) {
    return fiber_restrict(p, std::span<const std::complex<double>>(fixed), free_index);
}

}  // namespace toruslocus
