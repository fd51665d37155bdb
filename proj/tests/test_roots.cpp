#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracle_helpers.hpp"
#include "toruslocus/roots.hpp"

using namespace toruslocus;
using C = std::complex<double>;

namespace {

// expand prod (x - r_k) into dense coefficients, degree 0 first
std::vector<C> from_roots(const std::vector<C>& rs) {
    std::vector<C> c{1.0};
    for (const C& r : rs) {
        std::vector<C> n(c.size() + 1, C(0, 0));
        for (size_t k = 0; k < c.size(); ++k) {
            n[k + 1] += c[k];
            n[k] -= r * c[k];
        }
        c = std::move(n);
    }
    return c;
}

double match_roots(const RootSet& got, std::vector<C> expect) {
    std::vector<C> flat;
    for (size_t k = 0; k < got.roots.size(); ++k)
        flat.insert(flat.end(), static_cast<size_t>(got.multiplicities[k]), got.roots[k]);
    REQUIRE(flat.size() == expect.size());
    return oracle::hausdorff(flat, expect);
}

}  // namespace

TEST_CASE("closed forms for low degree") {
    RootSet r1 = roots({C(-3, 0), C(2, 0)});  // 2x - 3
    REQUIRE(r1.roots.size() == 1);
    CHECK(std::abs(r1.roots[0] - C(1.5, 0)) < 1e-15);

    // x^2 + 1 = (x-i)(x+i)
    RootSet r2 = roots({C(1, 0), C(0, 0), C(1, 0)});
    CHECK(match_roots(r2, {C(0, 1), C(0, -1)}) < 1e-15);

    // cancellation-prone quadratic: x^2 - 1e8 x + 1, roots ~1e8 and ~1e-8
    RootSet r3 = roots({C(1, 0), C(-1e8, 0), C(1, 0)});
    REQUIRE(r3.roots.size() == 2);
    double small = std::min(std::abs(r3.roots[0]), std::abs(r3.roots[1]));
    CHECK(std::abs(small - 1e-8) < 1e-20);  // naive formula loses this root entirely
}

TEST_CASE("degenerate degrees") {
    CHECK(roots({C(3, 0)}).degree == 0);
    CHECK(roots({C(3, 0)}).degree_zero);
    CHECK(roots({C(3, 0)}).roots.empty());
    CHECK_THROWS_AS(roots(std::vector<C>{}), std::invalid_argument);
    CHECK_THROWS_AS(roots({C(0, 0)}), std::invalid_argument);  // identically zero

    // low-order zero coefficients are roots at the origin, stripped and counted
    RootSet rz = roots({C(0, 0), C(0, 0), C(1, 0), C(1, 0)});  // x^2(x + 1)
    CHECK(rz.zero_roots_removed == 2);
    CHECK_FALSE(rz.degree_zero);
    REQUIRE(rz.roots.size() == 1);
    CHECK(std::abs(rz.roots[0] - C(-1, 0)) < 1e-15);
}

TEST_CASE("cyclotomic and random products") {
    // x^8 - 1: the 8th roots of unity
    std::vector<C> c(9, C(0, 0));
    c[0] = -1.0;
    c[8] = 1.0;
    RootSet r = roots(c);
    std::vector<C> expect;
    for (int k = 0; k < 8; ++k) expect.push_back(std::polar(1.0, 2 * M_PI * k / 8));
    CHECK(match_roots(r, expect) < 1e-12);
    CHECK(r.residual_bound <= 2e-10);  // the solver's own acceptance threshold for this norm

    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> mag(0.2, 3.0), ang(0.0, 2 * M_PI);
    for (int t = 0; t < 30; ++t) {
        int d = 3 + static_cast<int>(rng() % 8);
        std::vector<C> rs;
        for (int k = 0; k < d; ++k) {
            // rejection: keep roots pairwise separated so matching is honest
            for (;;) {
                C cand = std::polar(mag(rng), ang(rng));
                bool okay = true;
                for (const C& prev : rs) okay = okay && std::abs(prev - cand) > 0.15;
                if (okay) { rs.push_back(cand); break; }
            }
        }
        RootSet got = roots(from_roots(rs));
        CHECK(match_roots(got, rs) < 1e-8);
    }
}

TEST_CASE("multiple roots collapse to one entry") {
    // (x - 1)^2 (x + 2) = x^3 - 3x + 2
    RootSet d = roots({C(2, 0), C(-3, 0), C(0, 0), C(1, 0)});
    REQUIRE(d.roots.size() == 2);
    auto it = std::find_if(d.roots.begin(), d.roots.end(),
                           [](C r) { return std::abs(r - C(1, 0)) < 1e-9; });
    REQUIRE(it != d.roots.end());
    CHECK(d.multiplicities[static_cast<size_t>(it - d.roots.begin())] == 2);
    CHECK(std::abs(*it - C(1, 0)) < 1e-12);

    // nearby-but-distinct pair stays split: (x - 1)(x - 1 - 1e-4)
    RootSet s = roots(from_roots({C(1, 0), C(1.0001, 0)}));
    CHECK(s.distinct_count() == 2);
}

TEST_CASE("residual bound is observed, not promised") {
    std::vector<C> c = from_roots({C(0.3, 0.4), C(-1.2, 0.1), C(0, -2)});
    RootSet r = roots(c);
    double worst = 0.0;
    for (const C& x : r.roots) {
        C acc(0, 0);
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        worst = std::max(worst, std::abs(acc));
    }
    CHECK(worst <= r.residual_bound * (1 + 1e-12));
}

TEST_CASE("circle classification buckets") {
    RootSet r;
    r.roots = {std::polar(1.0, 0.3),           // exactly on
               std::polar(1.0 + 5e-11, 1.1),   // on, below the ambiguous band
               std::polar(1.0 + 3e-9, 2.0),    // off, but flagged ambiguous
               std::polar(1.3, -0.5)};         // clearly off
    r.multiplicities = {1, 1, 1, 1};
    r.degree = 4;
    CircleClass cc = circle_classify(r, 1e-9);
    CHECK(cc.on_circle.size() == 2);
    CHECK(cc.off_circle.size() == 2);
    REQUIRE(cc.ambiguous.size() == 1);  // overlaps the hard buckets by design
    CHECK(std::abs(std::abs(cc.ambiguous[0]) - 1.0) == Catch::Approx(3e-9).margin(1e-12));

    // a root just inside the threshold is on-circle yet still flagged
    RootSet b;
    b.roots = {std::polar(1.0 + 9.9e-10, 0.0)};
    b.multiplicities = {1};
    b.degree = 1;
    CircleClass bc = circle_classify(b, 1e-9);
    CHECK(bc.on_circle.size() == 1);
    CHECK(bc.ambiguous.size() == 1);
    CHECK_THROWS_AS(circle_classify(b, 0.0), std::invalid_argument);
}
