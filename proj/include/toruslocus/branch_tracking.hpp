#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "toruslocus/roots.hpp"

namespace toruslocus {

/// Sampled approximation of the analytic solution branches over a circle of
/// base angles: branches[b][k] is branch b's root over thetas[k]. Fibers whose
/// distinct root count falls below the generic count (ramification, degree
/// drop) are dropped and their angles recorded in dropped_thetas.
struct BranchWitness {
    std::vector<double> thetas;                 // retained angles, input order
    std::vector<CircleClass> fibers;            // per retained angle
    std::vector<std::vector<Complex>> branches; // branches[b] aligned with thetas
    int d = 1;                                  // base dimension (curves: 1)
    std::vector<double> dropped_thetas;
    int generic_count = 0;
};

/// Greedy nearest-continuation matching of roots across an ordered list of
/// (θ, RootSet) fibers. Retains exactly the fibers attaining the generic
/// (maximal) distinct root count; within each step, pairs branch endpoints to
/// new roots by ascending distance, which minimizes total displacement under
/// greedy assignment.
inline BranchWitness track_branches(const std::vector<std::pair<double, RootSet>>& fibers,
                                    double tol = 1e-9) {
    if (fibers.empty()) throw std::invalid_argument("track_branches: no fibers");

    int m = 0;
    for (const auto& [theta, rs] : fibers)
        m = std::max(m, static_cast<int>(rs.distinct_count()));
    if (m == 0)
        throw std::domain_error(
            "track_branches: every fiber is empty; the projection looks degenerate");

    BranchWitness bw;
    bw.generic_count = m;
    bw.branches.assign(static_cast<size_t>(m), {});

    std::vector<Complex> prev;
    for (const auto& [theta, rs] : fibers) {
        if (static_cast<int>(rs.distinct_count()) != m) {
            bw.dropped_thetas.push_back(theta);
            continue;
        }
        bw.thetas.push_back(theta);
        bw.fibers.push_back(circle_classify(rs, tol));

        if (prev.empty()) {
            // Seed branches in a deterministic angular order.
            std::vector<Complex> seed = rs.roots;
            std::sort(seed.begin(), seed.end(), [](const Complex& a, const Complex& b) {
                double aa = std::arg(a), ab = std::arg(b);
                if (aa != ab) return aa < ab;
                return std::abs(a) < std::abs(b);
            });
            for (int b = 0; b < m; ++b)
                bw.branches[static_cast<size_t>(b)].push_back(seed[static_cast<size_t>(b)]);
            prev = std::move(seed);
            continue;
        }

        // Greedy all-pairs matching: smallest displacement first.
        std::vector<std::tuple<double, int, int>> cand;
        cand.reserve(static_cast<size_t>(m) * static_cast<size_t>(m));
        for (int b = 0; b < m; ++b)
            for (int k = 0; k < m; ++k)
                cand.emplace_back(std::abs(rs.roots[static_cast<size_t>(k)] -
                                           prev[static_cast<size_t>(b)]),
                                  b, k);
        std::sort(cand.begin(), cand.end());

        std::vector<char> branch_done(static_cast<size_t>(m), 0), root_done(static_cast<size_t>(m), 0);
        int assigned = 0;
        for (const auto& [dist, b, k] : cand) {
            if (branch_done[static_cast<size_t>(b)] || root_done[static_cast<size_t>(k)]) continue;
            branch_done[static_cast<size_t>(b)] = root_done[static_cast<size_t>(k)] = 1;
            bw.branches[static_cast<size_t>(b)].push_back(rs.roots[static_cast<size_t>(k)]);
            prev[static_cast<size_t>(b)] = rs.roots[static_cast<size_t>(k)];
            if (++assigned == m) break;
        }
    }

    if (bw.thetas.empty())
        throw std::domain_error(
            "track_branches: every fiber is ramified; the projection looks degenerate");
    return bw;
}

}  // namespace toruslocus
