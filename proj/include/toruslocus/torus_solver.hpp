#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toruslocus/laurent.hpp"

namespace toruslocus {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<long long, 2>, 2>;

/// Point on the unit torus. Coordinates are floats; when the point arose from
/// a rational computation (tangency, unimodular enumeration) the exact
/// Gaussian-rational coordinates are carried alongside.
struct TorusPoint {
    std::vector<Complex> coords;
    std::optional<std::vector<GaussianRational>> exact;

    static TorusPoint from_float(std::vector<Complex> c) {
        TorusPoint p;
        // Snap onto the torus; callers guarantee the drift is rounding-level.
        for (auto& v : c) v /= std::abs(v);
        p.coords = std::move(c);
        return p;
    }
    static TorusPoint from_exact(std::vector<GaussianRational> e) {
        TorusPoint p;
        p.coords.reserve(e.size());
        for (const auto& v : e) p.coords.push_back(v.to_complex());
        p.exact = std::move(e);
        return p;
    }
};

/// One-parameter (or, degenerately, two-parameter) solution component:
/// { (base_1 * t^{g_1}, base_2 * t^{g_2}) : |t| = 1 } for each generator g.
struct CosetComponent {
    TorusPoint base;
    std::vector<std::array<int, 2>> generators;
};

/// Sample points from a coset component at `count` parameter values.
inline std::vector<TorusPoint> coset_samples(const CosetComponent& comp, int count) {
    std::vector<TorusPoint> out;
    for (int j = 0; j < count; ++j) {
        std::vector<Complex> c = comp.base.coords;
        for (size_t g = 0; g < comp.generators.size(); ++g) {
            double phase = 2.0 * M_PI * (j + 0.37 * static_cast<double>(g + 1)) / count;
            Complex t = std::polar(1.0, phase);
            for (size_t i = 0; i < c.size(); ++i)
                c[i] *= complex_ipow(t, comp.generators[g][i]);
        }
        out.push_back(TorusPoint::from_float(std::move(c)));
    }
    return out;
}

enum class SolutionKind { empty, finite, coset_family };

struct TorusSolutionSet {
    SolutionKind kind = SolutionKind::empty;
    std::vector<TorusPoint> points;       // finite case
    std::vector<CosetComponent> family;   // coset case
    std::string provenance;               // case tag from the solve analysis
    double residual = 0.0;                // max |equation| over returned points
};

enum class CircleCase { disjoint_outside, tangent, two_points, disjoint_nested, concentric_equal };

inline const char* to_string(CircleCase c) {
    switch (c) {
        case CircleCase::disjoint_outside: return "disjoint_outside";
        case CircleCase::tangent: return "tangent";
        case CircleCase::two_points: return "two_points";
        case CircleCase::disjoint_nested: return "disjoint_nested";
        case CircleCase::concentric_equal: return "concentric_equal";
    }
    return "?";
}

/// Intersection of the unit circle with the circle S(beta, |alpha|), i.e. the
/// u-values of u + alpha*v = beta with |u| = |v| = 1. The case analysis is
/// exact on Gaussian-rational data: with A = |alpha|^2, B = |beta|^2 and
/// c = (1 + B - A)/2, the chord line is u.beta = c, so the circles meet where
/// c^2 <= B, are tangent exactly when c^2 = B, and the empty cases split at
/// c > 1 (unit circle strictly inside the chord's far half-plane: outside)
/// versus c < 1 (nested).
struct CircleIntersection {
    double alpha_abs = 0.0;
    Complex beta;
    CircleCase kind = CircleCase::disjoint_nested;
    std::vector<Complex> z_values;                 // 0, 1, or 2 points; empty for concentric_equal
    std::optional<GaussianRational> z_exact;       // tangency point is always rational
};

inline CircleIntersection circle_circle(const GaussianRational& alpha, const GaussianRational& beta) {
    if (alpha.is_zero()) throw std::invalid_argument("circle_circle: alpha must be nonzero");
    CircleIntersection out;
    Rational A = alpha.norm2();
    Rational B = beta.norm2();
    out.alpha_abs = std::sqrt(to_double(A));
    out.beta = beta.to_complex();

    if (beta.is_zero()) {
        out.kind = A == 1 ? CircleCase::concentric_equal : CircleCase::disjoint_nested;
        return out;
    }

    Rational c = (Rational(1) + B - A) / 2;
    Rational discr = B - c * c;
    if (discr == 0) {
        out.kind = CircleCase::tangent;
        GaussianRational z = GaussianRational(c / B) * beta;
        out.z_values.push_back(z.to_complex());
        out.z_exact = std::move(z);
    } else if (discr > 0) {
        out.kind = CircleCase::two_points;
        double s = std::sqrt(to_double(discr));
        Complex b = beta.to_complex();
        double Bd = to_double(B), cd = to_double(c);
        out.z_values.push_back(b * Complex(cd, s) / Bd);
        out.z_values.push_back(b * Complex(cd, -s) / Bd);
    } else {
        out.kind = c > 1 ? CircleCase::disjoint_outside : CircleCase::disjoint_nested;
    }
    return out;
}

namespace detail {

/// Smith normal form of a 2x2 integer matrix: U*A*V = D with U, V unimodular
/// and D = diag(d1, d2), d1 >= 0, d2 >= 0, d1 | d2.
struct Snf2 {
    Mat2 U, V, D;
};

inline Snf2 snf_2x2(Mat2 A) {
    Mat2 U{{{1, 0}, {0, 1}}}, V{{{1, 0}, {0, 1}}};
    Mat2& M = A;

    auto swap_rows = [&] { std::swap(M[0], M[1]); std::swap(U[0], U[1]); };
    auto swap_cols = [&](Mat2& X) {
        std::swap(X[0][0], X[0][1]);
        std::swap(X[1][0], X[1][1]);
    };
    auto row_sub = [&](long long q) {  // row1 -= q*row0
        for (int j = 0; j < 2; ++j) {
            M[1][j] -= q * M[0][j];
            U[1][j] -= q * U[0][j];
        }
    };
    auto col_sub = [&](long long q) {  // col1 -= q*col0
        for (int i = 0; i < 2; ++i) {
            M[i][1] -= q * M[i][0];
            V[i][1] -= q * V[i][0];
        }
    };

    for (int guard = 0; guard < 512; ++guard) {
        if (M[0][0] == 0) {
            if (M[1][0] != 0) swap_rows();
            else if (M[0][1] != 0) { swap_cols(M); swap_cols(V); }
            else if (M[1][1] != 0) { swap_rows(); swap_cols(M); swap_cols(V); }
            else break;  // zero matrix
            continue;
        }
        if (M[1][0] % M[0][0] != 0) {
            row_sub(M[1][0] / M[0][0]);
            swap_rows();
            continue;
        }
        if (M[0][1] % M[0][0] != 0) {
            col_sub(M[0][1] / M[0][0]);
            swap_cols(M);
            swap_cols(V);
            continue;
        }
        row_sub(M[1][0] / M[0][0]);
        col_sub(M[0][1] / M[0][0]);
        if (M[1][1] % M[0][0] != 0) {
            // Fold the remainder back into the working column.
            for (int j = 0; j < 2; ++j) { M[0][j] += M[1][j]; U[0][j] += U[1][j]; }
            continue;
        }
        break;
    }

    if (M[0][0] < 0)
        for (int j = 0; j < 2; ++j) { M[0][j] = -M[0][j]; U[0][j] = -U[0][j]; }
    if (M[1][1] < 0)
        for (int j = 0; j < 2; ++j) { M[1][j] = -M[1][j]; U[1][j] = -U[1][j]; }
    return {U, V, M};
}

inline long long det2(const Mat2& A) { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }

/// phi_M(x) = (x1^{m11} x2^{m12}, x1^{m21} x2^{m22}); phi_M . phi_N = phi_{MN}.
inline std::array<Complex, 2> apply_mono(const Mat2& M, const std::array<Complex, 2>& x) {
    return {complex_ipow(x[0], static_cast<int>(M[0][0])) *
                complex_ipow(x[1], static_cast<int>(M[0][1])),
            complex_ipow(x[0], static_cast<int>(M[1][0])) *
                complex_ipow(x[1], static_cast<int>(M[1][1]))};
}

/// Extended gcd: g = gcd(a, b) >= 0 with x*a + y*b = g.
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline void sort_points(std::vector<TorusPoint>& pts) {
    auto key = [](const TorusPoint& p) {
        std::vector<double> k;
        for (const auto& c : p.coords) {
            double a = std::arg(c);
            if (a < 0) a += 2.0 * M_PI;
            k.push_back(a);
        }
        return k;
    };
    std::sort(pts.begin(), pts.end(),
              [&](const TorusPoint& a, const TorusPoint& b) { return key(a) < key(b); });
}

}  // namespace detail

/// All torus solutions of z^a w^b = alpha (a = exps[0], b = exps[1]).
/// Nonempty exactly when |alpha| = 1 (decided exactly); then the solution set
/// is a union of g = gcd(a, b) one-parameter cosets, parameterized through a
/// unimodular change of torus coordinates built from a Bezout identity.
inline TorusSolutionSet solve_monomial_eq(std::array<int, 2> exps, const GaussianRational& alpha) {
    TorusSolutionSet out;
    const long long a = exps[0], b = exps[1];

    if (a == 0 && b == 0) {
        if (alpha == GaussianRational(1)) {
            out.kind = SolutionKind::coset_family;
            out.provenance = "degenerate_identity";
            CosetComponent whole;
            whole.base = TorusPoint::from_exact({GaussianRational(1), GaussianRational(1)});
            whole.generators = {{1, 0}, {0, 1}};
            out.family.push_back(std::move(whole));
        } else {
            out.kind = SolutionKind::empty;
            out.provenance = "degenerate_contradiction";
        }
        return out;
    }

    if (!alpha.is_unit_modulus()) {
        out.kind = SolutionKind::empty;
        out.provenance = "two_term_modulus_mismatch";
        return out;
    }

    long long x, y;
    long long g = detail::ext_gcd(a, b, x, y);  // x*a + y*b = g
    long long ap = a / g, bp = b / g;
    // With (s, t) = (z^{ap} w^{bp}, z^{-y} w^{x}) a torus automorphism, the
    // equation reads s^g = alpha; each g-th root sigma gives the component
    // (sigma^x t^{-bp}, sigma^y t^{ap}).
    Complex al = alpha.to_complex();
    double base_arg = std::arg(al);
    out.kind = SolutionKind::coset_family;
    out.provenance = "two_term_unit_coset";
    for (long long j = 0; j < g; ++j) {
        Complex sigma = std::polar(1.0, (base_arg + 2.0 * M_PI * j) / static_cast<double>(g));
        CosetComponent comp;
        comp.base = TorusPoint::from_float(
            {complex_ipow(sigma, static_cast<int>(x)), complex_ipow(sigma, static_cast<int>(y))});
        comp.generators = {{static_cast<int>(-bp), static_cast<int>(ap)}};
        out.family.push_back(std::move(comp));
    }
    return out;
}

/// All torus solutions of the monomial system z^{A[0][0]} w^{A[0][1]} = u0,
/// z^{A[1][0]} w^{A[1][1]} = v0 with |u0| = |v0| = 1. Nonsingular A: exactly
/// |det A| points via Smith normal form. Singular A: the system collapses to
/// powers of one primitive monomial s = z^p w^q, giving coset families when
/// the two target equations are consistent and nothing otherwise.
inline TorusSolutionSet snf_enumerate(const Mat2& A, Complex u0, Complex v0,
                                      const std::optional<GaussianRational>& exact_u = std::nullopt,
                                      const std::optional<GaussianRational>& exact_v = std::nullopt) {
    TorusSolutionSet out;
    const long long det = detail::det2(A);

    if (det != 0) {
        out.kind = SolutionKind::finite;
        out.provenance = "snf_finite";
        if (std::llabs(det) == 1 && exact_u && exact_v) {
            // Unimodular system: invert exactly. A^{-1} = adj(A)/det.
            Mat2 inv{{{det * A[1][1], -det * A[0][1]}, {-det * A[1][0], det * A[0][0]}}};
            GaussianRational z = gaussian_pow(*exact_u, static_cast<int>(inv[0][0])) *
                                 gaussian_pow(*exact_v, static_cast<int>(inv[0][1]));
            GaussianRational w = gaussian_pow(*exact_u, static_cast<int>(inv[1][0])) *
                                 gaussian_pow(*exact_v, static_cast<int>(inv[1][1]));
            out.points.push_back(TorusPoint::from_exact({std::move(z), std::move(w)}));
            return out;
        }
        detail::Snf2 snf = detail::snf_2x2(A);
        std::array<Complex, 2> rhs = detail::apply_mono(snf.U, {u0, v0});
        const long long d1 = snf.D[0][0], d2 = snf.D[1][1];
        double a1 = std::arg(rhs[0]), a2 = std::arg(rhs[1]);
        for (long long j1 = 0; j1 < d1; ++j1) {
            Complex y1 = std::polar(1.0, (a1 + 2.0 * M_PI * j1) / static_cast<double>(d1));
            for (long long j2 = 0; j2 < d2; ++j2) {
                Complex y2 = std::polar(1.0, (a2 + 2.0 * M_PI * j2) / static_cast<double>(d2));
                std::array<Complex, 2> pt = detail::apply_mono(snf.V, {y1, y2});
                out.points.push_back(TorusPoint::from_float({pt[0], pt[1]}));
            }
        }
        detail::sort_points(out.points);
        double worst = 0.0;
        for (const auto& p : out.points) {
            std::array<Complex, 2> img = detail::apply_mono(A, {p.coords[0], p.coords[1]});
            worst = std::max({worst, std::abs(img[0] - u0), std::abs(img[1] - v0)});
        }
        out.residual = worst;
        return out;
    }

    // Rank <= 1. Both rows are integer multiples of one primitive direction.
    const bool row0_zero = A[0][0] == 0 && A[0][1] == 0;
    const bool row1_zero = A[1][0] == 0 && A[1][1] == 0;
    auto target_is_one = [](Complex t, const std::optional<GaussianRational>& e) {
        return e ? *e == GaussianRational(1) : std::abs(t - Complex(1.0, 0.0)) <= 1e-9;
    };
    if (row0_zero && row1_zero) {
        if (target_is_one(u0, exact_u) && target_is_one(v0, exact_v)) {
            out.kind = SolutionKind::coset_family;
            out.provenance = "degenerate_identity";
            CosetComponent whole;
            whole.base = TorusPoint::from_exact({GaussianRational(1), GaussianRational(1)});
            whole.generators = {{1, 0}, {0, 1}};
            out.family.push_back(std::move(whole));
        } else {
            out.kind = SolutionKind::empty;
            out.provenance = "degenerate_contradiction";
        }
        return out;
    }

    const long long ra = row0_zero ? A[1][0] : A[0][0];
    const long long rb = row0_zero ? A[1][1] : A[0][1];
    long long px, py;
    const long long pg = detail::ext_gcd(ra, rb, px, py);
    const long long p = ra / pg, q = rb / pg;  // primitive direction
    // Row multiples: row0 = m*(p,q), row1 = n*(p,q).
    const long long m = (p != 0) ? A[0][0] / p : A[0][1] / q;
    const long long n = (p != 0) ? A[1][0] / p : A[1][1] / q;

    // s := z^p w^q must satisfy s^m = u0 and s^n = v0. With g = gcd(m, n) and
    // xm*m + yn*n = g, every solution of s^g = u0^xm v0^yn works iff the
    // consistency relation u0^{n/g} = v0^{m/g} holds.
    long long xm, yn;
    const long long g = detail::ext_gcd(m, n, xm, yn);
    // m = n = 0 cannot happen: some row is nonzero.
    Complex lhs = complex_ipow(u0, static_cast<int>(n / g));
    Complex rhs = complex_ipow(v0, static_cast<int>(m / g));
    bool consistent;
    if (exact_u && exact_v)
        consistent = gaussian_pow(*exact_u, static_cast<int>(n / g)) ==
                     gaussian_pow(*exact_v, static_cast<int>(m / g));
    else
        consistent = std::abs(lhs - rhs) <= 1e-9;
    if (!consistent) {
        out.kind = SolutionKind::empty;
        out.provenance = "snf_rank1_inconsistent";
        return out;
    }

    Complex tau = complex_ipow(u0, static_cast<int>(xm)) * complex_ipow(v0, static_cast<int>(yn));
    double tau_arg = std::arg(tau);
    out.kind = SolutionKind::coset_family;
    out.provenance = "snf_rank1_coset";
    for (long long j = 0; j < g; ++j) {
        Complex s = std::polar(1.0, (tau_arg + 2.0 * M_PI * j) / static_cast<double>(g));
        // Components of z^p w^q = s via the Bezout identity px*p + py*q = 1.
        CosetComponent comp;
        comp.base = TorusPoint::from_float(
            {complex_ipow(s, static_cast<int>(px)), complex_ipow(s, static_cast<int>(py))});
        comp.generators = {{static_cast<int>(-q), static_cast<int>(p)}};
        out.family.push_back(std::move(comp));
    }
    return out;
}

/// Complete torus solution set of a 1-, 2-, or 3-term Laurent equation in two
/// variables. Three terms reduce (dividing by the graded-lex smallest term)
/// to u + alpha*v = beta with u, v monomials in (z, w); circle_circle gives
/// the possible (u, v) values and snf_enumerate lifts each back to (z, w).
inline TorusSolutionSet solve_trinomial(const LaurentPoly& p) {
    if (p.vars() != 2) throw std::invalid_argument("solve_trinomial: expected 2 variables");
    const size_t nterms = p.term_count();
    if (nterms == 0 || nterms > 3)
        throw std::invalid_argument("solve_trinomial: expected 1 to 3 terms");

    std::vector<std::pair<ExponentVector, GaussianRational>> terms(p.terms().begin(),
                                                                   p.terms().end());
    std::reverse(terms.begin(), terms.end());  // graded-lex descending

    if (nterms == 1) {
        TorusSolutionSet out;
        out.kind = SolutionKind::empty;
        out.provenance = "monomial_no_zero";
        return out;
    }

    if (nterms == 2) {
        // c0 z^{E0} + c1 z^{E1} = 0  <=>  z^{E0-E1} = -c1/c0.
        ExponentVector diff = terms[0].first - terms[1].first;
        GaussianRational alpha = -(terms[1].second / terms[0].second);
        return solve_monomial_eq({diff[0], diff[1]}, alpha);
    }

    // Divide by c0 * z^{E2}: z^{E0-E2} + (c1/c0) z^{E1-E2} = -c2/c0.
    ExponentVector r0 = terms[0].first - terms[2].first;
    ExponentVector r1 = terms[1].first - terms[2].first;
    GaussianRational alpha = terms[1].second / terms[0].second;
    GaussianRational beta = -(terms[2].second / terms[0].second);
    Mat2 A{{{r0[0], r0[1]}, {r1[0], r1[1]}}};

    CircleIntersection ci = circle_circle(alpha, beta);
    TorusSolutionSet out;
    out.provenance = std::string("trinomial_") + to_string(ci.kind);

    if (ci.kind == CircleCase::disjoint_outside || ci.kind == CircleCase::disjoint_nested) {
        out.kind = SolutionKind::empty;
        return out;
    }
    // concentric_equal cannot arise: beta = -c2/c0 is nonzero.

    GaussianRational alpha_inv = GaussianRational(1) / alpha;
    for (size_t k = 0; k < ci.z_values.size(); ++k) {
        Complex u0 = ci.z_values[k];
        Complex v0 = (ci.beta - u0) * alpha_inv.to_complex();
        std::optional<GaussianRational> eu, ev;
        if (ci.z_exact) {
            eu = ci.z_exact;
            ev = (beta - *ci.z_exact) * alpha_inv;
        }
        TorusSolutionSet part = snf_enumerate(A, u0, v0, eu, ev);
        out.provenance = out.provenance + "|" + part.provenance;
        if (part.kind == SolutionKind::finite) {
            out.kind = SolutionKind::finite;
            for (auto& pt : part.points) out.points.push_back(std::move(pt));
        } else if (part.kind == SolutionKind::coset_family) {
            out.kind = SolutionKind::coset_family;
            for (auto& comp : part.family) out.family.push_back(std::move(comp));
        }
    }
    if (out.points.empty() && out.family.empty()) out.kind = SolutionKind::empty;

    if (out.kind == SolutionKind::finite) {
        detail::sort_points(out.points);
        double worst = 0.0;
        for (const auto& pt : out.points) worst = std::max(worst, std::abs(eval(p, pt.coords)));
        out.residual = worst;
    }
    return out;
}

}  // namespace toruslocus
