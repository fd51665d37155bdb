#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle_helpers.hpp"
#include "toruslocus/laurent.hpp"
#include "toruslocus/parser.hpp"

using namespace toruslocus;

TEST_CASE("gaussian rational exactness") {
    GaussianRational a(Rational(1, 3), Rational(2, 7));
    GaussianRational b(Rational(-5, 2), Rational(1, 6));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a * a.conj() == GaussianRational(a.norm2()));

    // |3/5 + 4/5 i| = 1 exactly; nearby rationals are not unit modulus
    CHECK(GaussianRational(Rational(3, 5), Rational(4, 5)).is_unit_modulus());
    CHECK_FALSE(GaussianRational(Rational(3, 5), Rational(4, 5) + Rational(1, 1000000))
                    .is_unit_modulus());
    CHECK(GaussianRational::unit_i() * GaussianRational::unit_i() == GaussianRational(-1));
}

TEST_CASE("arithmetic basics") {
    auto p = parse_poly("z^2*w - 3*z + 1/2", {"z", "w"});
    auto q = parse_poly("z*w^-1 + i", {"z", "w"});
    CHECK((p + q) - q == p);
    CHECK(p * LaurentPoly::constant(2, GaussianRational(1)) == p);
    CHECK((p * q).vars() == 2);
    CHECK(p - p == LaurentPoly::zero(2));

    // distributivity on a few random triples
    std::mt19937_64 rng(71);
    for (int k = 0; k < 20; ++k) {
        auto a = oracle::random_laurent(rng, 2, 5, -4, 4);
        auto b = oracle::random_laurent(rng, 2, 5, -4, 4);
        auto c = oracle::random_laurent(rng, 2, 5, -4, 4);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("graded-lex leading term") {
    auto p = parse_poly("z*w + z^2 + w", {"z", "w"});
    const auto& [e, c] = p.leading_term();
    // total degree 2 tie broken lexicographically: z^2 beats z*w
    CHECK(e == ExponentVector{2, 0});
    CHECK(c == GaussianRational(1));

    auto q = parse_poly("3*z^-5 + z^-1", {"z"});
    CHECK(q.leading_term().first == ExponentVector{-1});
    CHECK(q.min_exponents() == ExponentVector{-5});
    CHECK(q.degree_span(0) == 4);
}

TEST_CASE("star is an exact involution and multiplicative") {
    // star(z + 2) = z^-1 + 2; on |z| = 1 this is the complex conjugate
    auto p = parse_poly("z + 2", {"z"});
    CHECK(star(p) == parse_poly("z^-1 + 2", {"z"}));

    auto pi = parse_poly("i*z^2 - (1+i)*w^-3", {"z", "w"});
    CHECK(star(star(pi)) == pi);

    std::mt19937_64 rng(1234);
    for (int k = 0; k < 50; ++k) {
        int nv = 1 + static_cast<int>(rng() % 3);
        auto a = oracle::random_laurent(rng, nv, 6, -5, 5);
        auto b = oracle::random_laurent(rng, nv, 6, -5, 5);
        CHECK(star(star(a)) == a);
        CHECK(star(a * b) == star(a) * star(b));
    }

    // pointwise meaning on the torus: star(p)(s) = conj(p(s))
    auto s = std::vector<std::complex<double>>{std::polar(1.0, 0.71), std::polar(1.0, -2.13)};
    auto lhs = eval(star(pi), s);
    auto rhs = std::conj(eval(pi, s));
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("normalize and associates") {
    auto p = parse_poly("2*z^3*w^-1 + 4*z", {"z", "w"});
    auto n = normalize(p);
    CHECK(n.poly.min_exponents() == ExponentVector{0, 0});
    CHECK(n.poly.leading_term().second == GaussianRational(1));
    // p reassembles from its normal form
    CHECK(n.scale * n.poly.shifted(n.shift) == p);

    auto q = parse_poly("i*z^5*w^2 + 2*i*z^3*w^3", {"z", "w"});
    auto base = parse_poly("z^2*w^-1 + 2", {"z", "w"});
    auto w = associates(base, q);
    REQUIRE(w.has_value());
    CHECK(w->unit_modulus);  // i is a unit
    // witness reconstructs q from base exactly
    CHECK(LaurentPoly::monomial(2, w->c, w->t) * base == q);

    CHECK_FALSE(associates(base, parse_poly("z^2*w^-1 + 3", {"z", "w"})).has_value());

    auto w2 = associates(base, GaussianRational(3) * base);
    REQUIRE(w2.has_value());
    CHECK_FALSE(w2->unit_modulus);  // 3 is not unit modulus
}

TEST_CASE("self-star witnesses have unit modulus automatically") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 40; ++k) {
        auto p = oracle::random_laurent(rng, 2, 4, -3, 3);
        auto sym = p * star(p);  // self-star by construction
        auto w = associates(star(sym), sym);
        REQUIRE(w.has_value());
        CHECK(w->unit_modulus);
    }
}

TEST_CASE("eval and poles") {
    auto p = parse_poly("z^-2 + w", {"z", "w"});
    std::vector<std::complex<double>> pt{{0.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(eval(p, pt), std::domain_error);
    pt[0] = {2.0, 0.0};
    CHECK(std::abs(eval(p, pt) - std::complex<double>(1.25, 0.0)) < 1e-15);
}

TEST_CASE("fiber restriction clears denominators") {
    // p = z^2 w - 1 restricted at z0: polynomial w - z0^-2 after clearing
    auto p = parse_poly("z^2*w - 1", {"z", "w"});
    std::vector<std::complex<double>> base{std::polar(1.0, 0.9)};
    FiberPoly f = fiber_restrict(p, base, 1);
    REQUIRE(f.coeffs.size() == 2);
    auto w0 = -f.coeffs[0] / f.coeffs[1];
    CHECK(std::abs(w0 - std::pow(base[0], -2.0)) < 1e-14);

    // negative powers of the fiber variable get cleared by a monomial
    auto q = parse_poly("z*w^-2 + w + 1", {"z", "w"});
    FiberPoly g = fiber_restrict(q, base, 1);
    CHECK(g.coeffs.size() == 4);  // w^-2 * (w^3 + w^2 + z0)
    CHECK(g.cleared_exponent == -2);

    // identically-zero restriction is reported, not silently returned
    auto h = parse_poly("(z - 2)*w", {"z", "w"});
    std::vector<std::complex<double>> two{{2.0, 0.0}};
    CHECK_THROWS_AS(fiber_restrict(h, two, 1), std::domain_error);
}

TEST_CASE("complex integer powers") {
    std::complex<double> z = std::polar(1.0, 0.37);
    CHECK(std::abs(complex_ipow(z, 7) - std::pow(z, 7.0)) < 1e-14);
    CHECK(std::abs(complex_ipow(z, -5) - std::pow(z, -5.0)) < 1e-14);
    CHECK(complex_ipow(z, 0) == std::complex<double>(1.0, 0.0));
}
