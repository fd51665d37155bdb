#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toruslocus/branch_tracking.hpp"
#include "toruslocus/laurent.hpp"
#include "toruslocus/parallel.hpp"
#include "toruslocus/roots.hpp"
#include "toruslocus/torus_solver.hpp"

namespace toruslocus {

/// Variety V in (C*)^n cut out by Laurent polynomial generators.
struct VarietySpec {
    int n = 2;
    std::vector<LaurentPoly> generators;
    std::optional<std::vector<int>> declared_projection;  // base coordinates

    void validate() const {
        if (generators.empty()) throw std::invalid_argument("VarietySpec: no generators");
        for (const auto& g : generators) {
            if (g.is_zero()) throw std::invalid_argument("VarietySpec: zero generator");
            if (g.vars() != n) throw std::invalid_argument("VarietySpec: variable-count mismatch");
        }
        if (declared_projection)
            for (int c : *declared_projection)
                if (c < 0 || c >= n)
                    throw std::invalid_argument("VarietySpec: projection index out of range");
    }
};

enum class Verdict { Dense, NotDense, Unknown };
enum class Reason {
    not_self_star,
    odd_degree,
    branch_witness,
    no_branch_found,
    exact_point_set,
    inconclusive
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Dense: return "Dense";
        case Verdict::NotDense: return "NotDense";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

inline const char* to_string(Reason r) {
    switch (r) {
        case Reason::not_self_star: return "not_self_star";
        case Reason::odd_degree: return "odd_degree";
        case Reason::branch_witness: return "branch_witness";
        case Reason::no_branch_found: return "no_branch_found";
        case Reason::exact_point_set: return "exact_point_set";
        case Reason::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Per-generator record of the necessary symmetry test: V dense in itself on
/// the torus forces each generator to be a unit-monomial associate of its
/// star. Result `no` is only claimed for hypersurfaces; a failing generator
/// in a multi-generator ideal might still generate a star-symmetric ideal.
struct SelfStarTranscript {
    enum class Result { yes, no, inconclusive };
    struct Entry {
        LaurentPoly generator;
        LaurentPoly star_poly;
        std::optional<AssociateWitness> witness;
    };
    Result result = Result::inconclusive;
    std::vector<Entry> entries;
};

inline SelfStarTranscript self_star_check(const VarietySpec& V) {
    V.validate();
    SelfStarTranscript t;
    bool all_yes = true;
    for (const auto& g : V.generators) {
        SelfStarTranscript::Entry e;
        e.generator = g;
        e.star_poly = star(g);
        e.witness = associates(g, e.star_poly);
        all_yes = all_yes && e.witness.has_value();
        t.entries.push_back(std::move(e));
    }
    if (all_yes) t.result = SelfStarTranscript::Result::yes;
    else if (V.generators.size() == 1) t.result = SelfStarTranscript::Result::no;
    else t.result = SelfStarTranscript::Result::inconclusive;
    return t;
}

/// Generic fiber size of the coordinate projection of a plane curve onto
/// coordinate `coord`: the exponent span of the other variable.
inline int projection_degree(const VarietySpec& V, int coord) {
    V.validate();
    if (V.n != 2 || V.generators.size() != 1)
        throw std::invalid_argument("projection_degree: needs a plane curve (one generator, 2 vars)");
    if (coord < 0 || coord > 1) throw std::invalid_argument("projection_degree: bad coordinate");
    int span = V.generators[0].degree_span(1 - coord);
    if (span == 0)
        throw std::domain_error("projection_degree: fiber variable absent; projection is not finite");
    return span;
}

struct OddDegreeResult {
    int base_coord = 0;
    int degree = 0;
};

/// Sufficient test (one-sided): a self-star curve with a dominant projection
/// of odd degree meets the torus densely — the conjugate-inversion involution
/// on an odd fiber has a fixed point, i.e. an on-circle root. Returns the
/// first coordinate whose projection degree is odd, or nullopt (inapplicable,
/// which is NOT a not-dense claim).
inline std::optional<OddDegreeResult> odd_degree_criterion(const VarietySpec& V) {
    std::vector<int> order{0, 1};
    if (V.declared_projection && !V.declared_projection->empty()) {
        int first = (*V.declared_projection)[0];
        order = {first, 1 - first};
    }
    for (int coord : order) {
        int span = V.generators[0].degree_span(1 - coord);
        if (span > 0 && span % 2 == 1) return OddDegreeResult{coord, span};
    }
    return std::nullopt;
}

/// Sampling window on the base circle: grid_size angles covering the arc of
/// half-width delta around u (the full circle when delta >= pi).
struct DensityProbe {
    Complex u{1.0, 0.0};
    double delta = M_PI;
    int grid_size = 4096;
    double tol = 1e-9;
};

/// The arc of consecutive unambiguous on-circle samples backing a Dense call.
struct ArcInfo {
    int branch = 0;
    int samples = 0;
    double theta_start = 0.0;
    double theta_end = 0.0;
    bool full_circle = false;
};

struct DensityCertificate {
    std::optional<SelfStarTranscript> self_star;
    std::optional<TorusSolutionSet> solutions;
    std::optional<BranchWitness> branch;
    std::optional<OddDegreeResult> odd_degree;
    std::optional<ArcInfo> arc;
};

struct DensityVerdict {
    Verdict verdict = Verdict::Unknown;
    Reason reason = Reason::inconclusive;
    DensityCertificate certificate;
    DensityProbe probe;
    VarietySpec variety;
    long fibers_evaluated = 0;
    int longest_run = 0;
    int run_threshold = 0;
};

namespace detail {

struct SweepResult {
    BranchWitness witness;
    ArcInfo best_arc;
    int longest_run = 0;
    bool dense = false;
};

/// Sweep the probe's base arc: restrict to each fiber, find roots, track
/// branches, and measure the longest run of consecutive grid angles on which
/// a single tracked branch stays unambiguously on the circle. Runs break at
/// dropped (ramified or degenerate) fibers.
inline std::optional<SweepResult> sweep_probe(const LaurentPoly& p, int fiber_var,
                                              const DensityProbe& probe) {
    const int N = probe.grid_size;
    if (N < 8) throw std::invalid_argument("sweep_probe: grid too small");
    const bool full = probe.delta >= M_PI * (1.0 - 1e-12);
    const double theta_u = std::arg(probe.u);

    std::vector<double> grid(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j)
        grid[static_cast<size_t>(j)] =
            full ? theta_u - M_PI + 2.0 * M_PI * j / N
                 : theta_u - probe.delta + 2.0 * probe.delta * j / (N - 1);

    std::vector<std::pair<double, RootSet>> fibers(static_cast<size_t>(N));
    std::vector<char> zero_flag(static_cast<size_t>(N), 0);
    parallel_for(static_cast<size_t>(N), [&](size_t j) {
        double th = grid[j];
        std::vector<Complex> base{std::polar(1.0, th)};
        RootSet rs;
        try {
            FiberPoly fp = fiber_restrict(p, base, fiber_var);
            rs = roots(fp.coeffs);
        } catch (const std::domain_error&) {
            zero_flag[j] = 1;  // identically-zero restriction: drop this fiber
        } catch (const RootConvergenceError&) {
            // keep the empty RootSet; the fiber is dropped by tracking
        }
        fibers[j] = {th, std::move(rs)};
    });
    int zero_fibers = static_cast<int>(std::count(zero_flag.begin(), zero_flag.end(), 1));
    if (zero_fibers == N)
        throw std::domain_error("sweep_probe: generator restricts to zero on every fiber");

    BranchWitness bw;
    try {
        bw = track_branches(fibers, probe.tol);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }

    // Map retained fibers back to grid indices (theta values are shared).
    std::vector<int> grid_index(bw.thetas.size());
    size_t gi = 0;
    for (size_t k = 0; k < bw.thetas.size(); ++k) {
        while (gi < grid.size() && grid[gi] != bw.thetas[k]) ++gi;
        grid_index[k] = static_cast<int>(gi);
    }

    const int m = static_cast<int>(bw.branches.size());
    SweepResult out;
    for (int b = 0; b < m; ++b) {
        std::vector<char> hit(static_cast<size_t>(N), 0);
        for (size_t k = 0; k < bw.thetas.size(); ++k) {
            double dev = std::abs(std::abs(bw.branches[static_cast<size_t>(b)][k]) - 1.0);
            if (dev < probe.tol / 10.0) hit[static_cast<size_t>(grid_index[k])] = 1;
        }
        // Longest run, circular when the probe wraps the whole circle.
        int best = 0, best_start = 0;
        int cur = 0, cur_start = 0;
        const int span = full ? 2 * N : N;
        for (int j = 0; j < span; ++j) {
            if (hit[static_cast<size_t>(j % N)]) {
                if (cur == 0) cur_start = j;
                if (++cur > best) { best = cur; best_start = cur_start; }
                if (cur == N) break;  // full circle
            } else {
                cur = 0;
            }
        }
        best = std::min(best, N);
        if (best > out.longest_run) {
            out.longest_run = best;
            out.best_arc.branch = b;
            out.best_arc.samples = best;
            out.best_arc.theta_start = grid[static_cast<size_t>(best_start % N)];
            out.best_arc.theta_end = grid[static_cast<size_t>((best_start + best - 1) % N)];
            out.best_arc.full_circle = full && best == N;
        }
    }
    out.witness = std::move(bw);
    out.dense = out.longest_run >= N / 8;
    return out;
}

inline int pick_fiber_var(const VarietySpec& V) {
    if (V.declared_projection && !V.declared_projection->empty())
        return 1 - (*V.declared_projection)[0];
    int s0 = V.generators[0].degree_span(0), s1 = V.generators[0].degree_span(1);
    if (s1 > 0 && (s0 == 0 || s1 <= s0)) return 1;
    return 0;
}

}  // namespace detail

/// Real dimension of the sampled torus locus as seen by a branch witness:
/// returns the base dimension when some branch stays on the circle over an
/// arc of consecutive retained samples (positive angular measure at the grid
/// resolution), 0 when only isolated on-circle hits exist.
inline int real_dimension_estimate(const BranchWitness& w) {
    if (w.branches.empty() || w.thetas.empty()) return 0;
    const size_t nret = w.thetas.size();
    const size_t threshold = std::max<size_t>(2, nret / 64);
    for (const auto& branch : w.branches) {
        size_t run = 0;
        for (size_t k = 0; k < branch.size(); ++k) {
            double tol = w.fibers[k].tol;
            double dev = std::abs(std::abs(branch[k]) - 1.0);
            run = dev <= tol ? run + 1 : 0;
            if (run >= threshold) return w.d;
        }
    }
    return 0;
}

/// Numeric semidecision for one probe window, with the exact short-circuits:
/// a failing self-star test refutes density outright, and the trinomial
/// solver settles few-term curves exactly. Sampling can certify Dense (an
/// arc-length branch of on-circle roots) but never NotDense.
inline DensityVerdict sample_decide(const VarietySpec& V, const DensityProbe& probe) {
    V.validate();
    DensityVerdict out;
    out.probe = probe;
    out.variety = V;
    out.run_threshold = probe.grid_size / 8;

    SelfStarTranscript ss = self_star_check(V);
    out.certificate.self_star = ss;

    const bool plane_curve = V.n == 2 && V.generators.size() == 1;
    const bool few_terms = plane_curve && V.generators[0].term_count() <= 3;
    if (few_terms) out.certificate.solutions = solve_trinomial(V.generators[0]);

    if (ss.result == SelfStarTranscript::Result::no) {
        out.verdict = Verdict::NotDense;
        out.reason = Reason::not_self_star;
        return out;
    }

    if (few_terms) {
        const TorusSolutionSet& sol = *out.certificate.solutions;
        if (sol.kind == SolutionKind::coset_family &&
            ss.result == SelfStarTranscript::Result::yes) {
            out.verdict = Verdict::Dense;
            out.reason = Reason::exact_point_set;
        } else if (sol.kind != SolutionKind::coset_family) {
            out.verdict = Verdict::NotDense;
            out.reason = Reason::exact_point_set;
            return out;
        }
    }

    if (!plane_curve) {
        out.verdict = Verdict::Unknown;
        out.reason = Reason::inconclusive;
        return out;
    }

    std::optional<detail::SweepResult> sw =
        detail::sweep_probe(V.generators[0], detail::pick_fiber_var(V), probe);
    out.fibers_evaluated = probe.grid_size;
    if (sw) {
        out.longest_run = sw->longest_run;
        out.certificate.branch = std::move(sw->witness);
        out.certificate.arc = sw->best_arc;
    }
    if (out.verdict == Verdict::Dense) return out;  // exact Dense, witness attached
    if (sw && sw->dense) {
        out.verdict = Verdict::Dense;
        out.reason = Reason::branch_witness;
    } else {
        out.verdict = Verdict::Unknown;
        out.reason = Reason::no_branch_found;
    }
    return out;
}

/// Full decision pipeline, symbolic paths before sampling: self-star
/// necessity, exact trinomial solve, odd projection degree, then the sweep —
/// first over the whole circle, then over `scan_probes` evenly spaced local
/// windows (a witness arc can avoid any fixed neighborhood). Dense verdicts
/// always carry a replayable certificate and, when sampling succeeds, a
/// branch witness; Unknown is an honest outcome.
inline DensityVerdict decide(const VarietySpec& V, const DensityProbe& base_probe = {},
                             int scan_probes = 32) {
    V.validate();
    DensityVerdict out;
    out.probe = base_probe;
    out.variety = V;
    out.run_threshold = base_probe.grid_size / 8;

    SelfStarTranscript ss = self_star_check(V);
    out.certificate.self_star = ss;

    const bool plane_curve = V.n == 2 && V.generators.size() == 1;
    const bool few_terms = plane_curve && V.generators[0].term_count() <= 3;
    if (few_terms) out.certificate.solutions = solve_trinomial(V.generators[0]);

    if (ss.result == SelfStarTranscript::Result::no) {
        out.verdict = Verdict::NotDense;
        out.reason = Reason::not_self_star;
        return out;
    }
    if (few_terms && out.certificate.solutions->kind != SolutionKind::coset_family) {
        out.verdict = Verdict::NotDense;
        out.reason = Reason::exact_point_set;
        return out;
    }
    if (!plane_curve) {
        out.verdict = Verdict::Unknown;
        out.reason = Reason::inconclusive;
        return out;
    }

    if (few_terms) {  // coset family on a self-star curve: dense, exactly
        out.verdict = Verdict::Dense;
        out.reason = Reason::exact_point_set;
    } else {
        std::optional<OddDegreeResult> odd = odd_degree_criterion(V);
        if (odd) {
            out.verdict = Verdict::Dense;
            out.reason = Reason::odd_degree;
            out.certificate.odd_degree = odd;
        }
    }

    const int fiber_var = detail::pick_fiber_var(V);
    std::optional<detail::SweepResult> sw =
        detail::sweep_probe(V.generators[0], fiber_var, base_probe);
    out.fibers_evaluated += base_probe.grid_size;
    if (sw) {
        out.longest_run = sw->longest_run;
        out.certificate.branch = std::move(sw->witness);
        out.certificate.arc = sw->best_arc;
    }
    if (out.verdict == Verdict::Dense) return out;  // symbolic verdict + sampled witness
    if (sw && sw->dense) {
        out.verdict = Verdict::Dense;
        out.reason = Reason::branch_witness;
        return out;
    }

    // Local probes: a short witness arc needs a finer window to fill
    // grid_size/8 consecutive samples.
    for (int k = 0; k < scan_probes; ++k) {
        DensityProbe local = base_probe;
        local.u = std::polar(1.0, 2.0 * M_PI * k / scan_probes);
        local.delta = M_PI / scan_probes;
        local.grid_size = std::max(64, base_probe.grid_size / 8);
        std::optional<detail::SweepResult> lsw =
            detail::sweep_probe(V.generators[0], fiber_var, local);
        out.fibers_evaluated += local.grid_size;
        if (lsw && lsw->dense) {
            out.verdict = Verdict::Dense;
            out.reason = Reason::branch_witness;
            out.probe = local;
            out.longest_run = lsw->longest_run;
            out.run_threshold = local.grid_size / 8;
            out.certificate.branch = std::move(lsw->witness);
            out.certificate.arc = lsw->best_arc;
            return out;
        }
    }
    out.verdict = Verdict::Unknown;
    out.reason = Reason::no_branch_found;
    return out;
}

}  // namespace toruslocus
