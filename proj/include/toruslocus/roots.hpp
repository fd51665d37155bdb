#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace toruslocus {

using Complex = std::complex<double>;

/// Roots of a univariate complex polynomial, distinct up to the clustering
/// radius, with multiplicity counts. `zero_roots_removed` counts roots at the
/// origin stripped before iteration (never on the unit circle, so torus
/// pipelines can ignore them). `degree_zero` flags a constant input.
struct RootSet {
    std::vector<Complex> roots;
    std::vector<int> multiplicities;
    double residual_bound = 0.0;  // max |p(r)| over returned roots
    int degree = 0;               // after stripping; equals sum of multiplicities
    int zero_roots_removed = 0;
    bool degree_zero = false;

    size_t distinct_count() const { return roots.size(); }
};

/// Thrown when neither Aberth iteration nor the companion-matrix fallback
/// reaches the residual target; carries the best iterate found.
class RootConvergenceError : public std::runtime_error {
public:
    RootConvergenceError(std::string msg, std::vector<Complex> best_roots, double best_residual)
        : std::runtime_error(std::move(msg)),
          best(std::move(best_roots)),
          residual(best_residual) {}
    std::vector<Complex> best;
    double residual;
};

namespace detail {

// p(x) and p'(x) by a fused Horner pass; coeffs are degree-0-first.
inline void horner2(const std::vector<Complex>& c, Complex x, Complex& p, Complex& dp) {
    p = c.back();
    dp = Complex(0.0, 0.0);
    for (size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[k];
    }
}

inline double coeff_norm1(const std::vector<Complex>& c) {
    double s = 0.0;
    for (const auto& a : c) s += std::abs(a);
    return s;
}

inline std::vector<Complex> derivative(const std::vector<Complex>& c) {
    if (c.size() <= 1) return {Complex(0.0, 0.0)};
    std::vector<Complex> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

// Iterated roots smear a k-fold root over a radius ~eps^(1/k), which defeats
// fixed-radius clustering. But a k-fold root of p is a simple root of
// p^(k-1), so Newton there recovers it to machine precision. Candidate
// groups are accepted only if p nearly vanishes at the refined point, which
// keeps genuinely distinct close roots apart.
inline void collapse_multiple_roots(const std::vector<Complex>& c, std::vector<Complex>& z,
                                    double cluster_radius, double norm1) {
    const double detect = 100.0 * cluster_radius;
    const double accept = 1e-13 * norm1;
    std::vector<char> grouped(z.size(), 0);
    for (size_t j = 0; j < z.size(); ++j) {
        if (grouped[j]) continue;
        std::vector<size_t> group{j};
        for (size_t k = j + 1; k < z.size(); ++k)
            if (!grouped[k] && std::abs(z[k] - z[j]) <= detect) group.push_back(k);
        if (group.size() < 2) continue;

        Complex x(0.0, 0.0);
        for (size_t idx : group) x += z[idx];
        x /= static_cast<double>(group.size());
        std::vector<Complex> dc = c;
        for (size_t m = 1; m < group.size(); ++m) dc = derivative(dc);
        for (int step = 0; step < 12; ++step) {
            Complex p, dp;
            horner2(dc, x, p, dp);
            if (dp == Complex(0.0, 0.0)) break;
            Complex delta = p / dp;
            x -= delta;
            if (std::abs(delta) <= 1e-16 * (1.0 + std::abs(x))) break;
        }

        Complex p, dp;
        horner2(c, x, p, dp);
        bool stayed_local = true;
        for (size_t idx : group) stayed_local &= std::abs(z[idx] - x) <= detect;
        if (stayed_local && std::abs(p) <= accept)
            for (size_t idx : group) {
                z[idx] = x;
                grouped[idx] = 1;
            }
    }
}

inline std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
    Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in b ± disc.
    Complex q = (std::norm(b + disc) >= std::norm(b - disc)) ? -0.5 * (b + disc)
                                                             : -0.5 * (b - disc);
    if (q == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    return {q / a, c / q};
}

inline std::vector<Complex> companion_eigen_roots(const std::vector<Complex>& monic) {
    const int d = static_cast<int>(monic.size()) - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int r = 1; r < d; ++r) C(r, r - 1) = 1.0;
    for (int r = 0; r < d; ++r) C(r, d - 1) = -monic[static_cast<size_t>(r)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, /*computeEigenvectors=*/false);
    std::vector<Complex> out(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) out[static_cast<size_t>(k)] = solver.eigenvalues()(k);
    return out;
}

}  // namespace detail

/// All complex roots of sum_k coeffs[k] * w^k. Simultaneous Aberth–Ehrlich
/// iteration (Gauss–Seidel sweeps, Cauchy-bound initialization), falling back
/// to companion-matrix eigenvalues plus Newton polish if a sweep stalls.
/// Residual target: max |p(r)| <= 1e-10 * sum |coeffs|. Roots closer than
/// cluster_radius are merged into one root with a multiplicity count.
inline RootSet roots(const std::vector<Complex>& coeffs_in, double cluster_radius = 1e-7) {
    RootSet rs;
    if (coeffs_in.empty()) throw std::invalid_argument("roots: empty coefficient list");

    double maxmag = 0.0;
    for (const auto& c : coeffs_in) maxmag = std::max(maxmag, std::abs(c));
    if (maxmag == 0.0) throw std::invalid_argument("roots: zero polynomial");
    const double strip_tol = 1e-14 * maxmag;

    std::vector<Complex> c = coeffs_in;
    while (c.size() > 1 && std::abs(c.back()) <= strip_tol) c.pop_back();
    while (c.size() > 1 && std::abs(c.front()) <= strip_tol) {
        c.erase(c.begin());
        ++rs.zero_roots_removed;
    }

    const int d = static_cast<int>(c.size()) - 1;
    rs.degree = d;
    if (d == 0) {
        rs.degree_zero = rs.zero_roots_removed == 0;
        return rs;
    }

    const double norm1 = detail::coeff_norm1(c);
    const double target = 1e-10 * norm1;

    std::vector<Complex> z;
    if (d == 1) {
        z = {-c[0] / c[1]};
    } else if (d == 2) {
        z = detail::quadratic_roots(c[2], c[1], c[0]);
    } else {
        std::vector<Complex> monic(c.size());
        for (size_t k = 0; k < c.size(); ++k) monic[k] = c[k] / c.back();

        double bound = 0.0;
        for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(monic[static_cast<size_t>(k)]));
        const double R = 1.0 + bound;

        z.resize(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            // Radii staggered over [0.4R, R] to break symmetric stalls.
            double r = R * (0.4 + 0.6 * ((j % 5) + 1) / 5.0);
            double ang = 2.0 * M_PI * j / d + 0.4;
            z[static_cast<size_t>(j)] = Complex(r * std::cos(ang), r * std::sin(ang));
        }

        const double monic_target = target / std::abs(c.back());
        bool converged = false;
        for (int sweep = 0; sweep < 300 && !converged; ++sweep) {
            converged = true;
            for (int j = 0; j < d; ++j) {
                Complex p, dp;
                detail::horner2(monic, z[static_cast<size_t>(j)], p, dp);
                if (std::abs(p) <= 1e-3 * monic_target) continue;
                Complex w = (dp == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : p / dp;
                Complex sum(0.0, 0.0);
                for (int k = 0; k < d; ++k)
                    if (k != j) sum += 1.0 / (z[static_cast<size_t>(j)] - z[static_cast<size_t>(k)]);
                Complex denom = 1.0 - w * sum;
                Complex dz = (denom == Complex(0.0, 0.0)) ? w : w / denom;
                z[static_cast<size_t>(j)] -= dz;
                if (std::abs(dz) > 1e-14 * (1.0 + std::abs(z[static_cast<size_t>(j)])))
                    converged = false;
            }
        }

        auto max_residual = [&](const std::vector<Complex>& pts) {
            double worst = 0.0;
            for (const auto& r : pts) {
                Complex p, dp;
                detail::horner2(c, r, p, dp);
                worst = std::max(worst, std::abs(p));
            }
            return worst;
        };

        if (max_residual(z) > target) {
            std::vector<Complex> ev = detail::companion_eigen_roots(monic);
            for (auto& r : ev) {
                for (int step = 0; step < 8; ++step) {
                    Complex p, dp;
                    detail::horner2(c, r, p, dp);
                    if (std::abs(p) <= 0.01 * target || dp == Complex(0.0, 0.0)) break;
                    r -= p / dp;
                }
            }
            if (max_residual(ev) <= max_residual(z)) z = ev;
            double res = max_residual(z);
            if (res > target)
                throw RootConvergenceError(
                    "roots: residual " + std::to_string(res) + " above target after fallback", z,
                    res);
        }
    }

    if (d > 2) detail::collapse_multiple_roots(c, z, cluster_radius, norm1);

    // Deterministic order, then cluster into multiplicities.
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<char> used(z.size(), 0);
    for (size_t j = 0; j < z.size(); ++j) {
        if (used[j]) continue;
        Complex sum = z[j];
        int count = 1;
        for (size_t k = j + 1; k < z.size(); ++k) {
            if (!used[k] && std::abs(z[k] - z[j]) <= cluster_radius) {
                used[k] = 1;
                sum += z[k];
                ++count;
            }
        }
        rs.roots.push_back(sum / static_cast<double>(count));
        rs.multiplicities.push_back(count);
    }

    double worst = 0.0;
    for (const auto& r : rs.roots) {
        Complex p, dp;
        detail::horner2(c, r, p, dp);
        worst = std::max(worst, std::abs(p));
    }
    rs.residual_bound = worst;
    return rs;
}

/// Partition of a root set by unit-circle membership: on-circle means
/// ||r| - 1| <= tol. Roots whose deviation lands within a factor of 10 of the
/// threshold (tol/10 <= ||r|-1| <= 10*tol) are additionally flagged
/// ambiguous — the call is tolerance-sensitive there and worth auditing.
struct CircleClass {
    std::vector<Complex> on_circle;
    std::vector<Complex> off_circle;
    std::vector<Complex> ambiguous;
    double tol = 1e-9;
};

inline CircleClass circle_classify(const RootSet& rs, double tol = 1e-9) {
    if (!(tol > 0.0)) throw std::invalid_argument("circle_classify: tol must be positive");
    CircleClass cc;
    cc.tol = tol;
    for (const auto& r : rs.roots) {
        double dev = std::abs(std::abs(r) - 1.0);
        (dev <= tol ? cc.on_circle : cc.off_circle).push_back(r);
        if (dev >= tol / 10.0 && dev <= 10.0 * tol) cc.ambiguous.push_back(r);
    }
    return cc;
}

}  // namespace toruslocus
