#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rampi/elliptic.hpp"
#include "support/oracles.hpp"

using namespace rampi;

namespace {
Real tol(const PrecisionContext& ctx, long offset) {
    return Real::pow10(-ctx.digits + offset, ctx.bits());
}
} // namespace

TEST_CASE("agm basics") {
    PrecisionContext ctx(60);
    const auto prec = ctx.bits();
    REQUIRE(agm(Real(1, prec), Real(1, prec), ctx) == Real(1, prec));
    // Symmetry.
    Real a(mpq_class(7, 5), prec), b(mpq_class(2, 9), prec);
    REQUIRE(abs(agm(a, b, ctx) - agm(b, a, ctx)) <= tol(ctx, 2));
    REQUIRE_THROWS_AS(agm(Real(0, prec), Real(1, prec), ctx), std::domain_error);
    REQUIRE_THROWS_AS(agm(Real(-2, prec), Real(1, prec), ctx), std::domain_error);
}

TEST_CASE("complete elliptic integrals against quadrature oracle") {
    PrecisionContext ctx(40);
    const auto prec = ctx.bits();

    // The lemniscatic point k = 1/sqrt(2): three independent routes.
    Real k = sqrt(Real(mpq_class(1, 2), prec));
    Modulus m = Modulus::from_k(k, ctx);
    Real K_agm = ellip_k(m, ctx);
    Real K_quad = testsupport::quadrature_ellip_k(k, ctx);
    Real K_gamma = pow_si(gamma(Real(mpq_class(1, 4), prec)), 2) / (4 * sqrt(Real::pi(prec)));
    REQUIRE(abs(K_agm - K_quad) <= tol(ctx, 6));
    REQUIRE(abs(K_agm - K_gamma) <= tol(ctx, 4));
    REQUIRE(K_agm.to_string(21).substr(0, 22) == "1.85407467730137191843");

    Real E_agm = ellip_e(m, ctx);
    Real E_quad = testsupport::quadrature_ellip_e(k, ctx);
    REQUIRE(abs(E_agm - E_quad) <= tol(ctx, 6));

    // A generic modulus.
    Real k2(mpq_class(3, 10), prec);
    Modulus m2 = Modulus::from_k(k2, ctx);
    REQUIRE(abs(ellip_k(m2, ctx) - testsupport::quadrature_ellip_k(k2, ctx)) <= tol(ctx, 6));
    REQUIRE(abs(ellip_e(m2, ctx) - testsupport::quadrature_ellip_e(k2, ctx)) <= tol(ctx, 6));
}

TEST_CASE("elliptic integral limits and domain") {
    PrecisionContext ctx(40);
    const auto prec = ctx.bits();
    Real half_pi = Real::pi(prec) / 2;

    Real k = Real::pow10(-12, prec);
    Modulus m = Modulus::from_k(k, ctx);
    REQUIRE(abs(ellip_k(m, ctx) - half_pi) <= Real::pow10(-23, prec));
    REQUIRE(abs(ellip_e(m, ctx) - half_pi) <= Real::pow10(-23, prec));

    REQUIRE_THROWS_AS(Modulus::from_k(Real(1, prec), ctx), std::domain_error);
    REQUIRE_THROWS_AS(Modulus::from_k(Real(0, prec), ctx), std::domain_error);
    REQUIRE_THROWS_AS(Modulus::from_k(Real(2, prec), ctx), std::domain_error);
}

TEST_CASE("derivatives match finite differences") {
    PrecisionContext ctx(60);
    const auto prec = ctx.bits();
    Real fd_tol = Real::pow10(-ctx.digits / 2, prec);

    auto Kf = [&](const Real& x) { return ellip_k(Modulus::from_k(x, ctx), ctx); };
    auto Ef = [&](const Real& x) { return ellip_e(Modulus::from_k(x, ctx), ctx); };

    for (const char* ks : {"0.5", "0.3", "0.82"}) {
        Real k(ks, prec);
        Modulus m = Modulus::from_k(k, ctx);
        REQUIRE(abs(dK_dk(m, ctx) - testsupport::finite_difference(Kf, k, ctx)) <= fd_tol);
        REQUIRE(abs(dE_dk(m, ctx) - testsupport::finite_difference(Ef, k, ctx)) <= fd_tol);
    }
}

TEST_CASE("legendre relation holds across the modulus range") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();
    std::mt19937_64 rng(20260825);
    std::uniform_real_distribution<double> dist(0.01, 0.99);
    for (int i = 0; i < 20; ++i) {
        Real k(std::to_string(dist(rng)).c_str(), prec);
        Modulus m = Modulus::from_k(k, ctx);
        REQUIRE(abs(legendre_defect(m, ctx)) <= tol(ctx, 2));
    }
}

TEST_CASE("theta constants and the quartic identity") {
    PrecisionContext ctx(60);
    const auto prec = ctx.bits();

    ThetaTriple t = theta(Real(mpq_class(1, 10), prec), ctx);
    // theta3(0.1) = 1 + 2(0.1 + 0.1^4 + 0.1^9 + ...)
    REQUIRE(t.t3.to_string(17).substr(0, 18) == "1.2002000020000002");

    for (const char* qs : {"0.01", "0.1", "0.3"}) {
        ThetaTriple tt = theta(Real(qs, prec), ctx);
        Real defect = pow_si(tt.t3, 4) - pow_si(tt.t2, 4) - pow_si(tt.t4, 4);
        REQUIRE(abs(defect) <= tol(ctx, 2));
    }

    REQUIRE_THROWS_AS(theta(Real(1, prec), ctx), std::domain_error);
    REQUIRE_THROWS_AS(theta(Real(0, prec), ctx), std::domain_error);
}

TEST_CASE("nome and its inverse") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();

    // Self-complementary point: q(1/sqrt(2)) = exp(-pi).
    Modulus lemn = Modulus::from_k(sqrt(Real(mpq_class(1, 2), prec)), ctx);
    REQUIRE(abs(nome(lemn, ctx) - exp(-Real::pi(prec))) <= tol(ctx, 4));

    // Round trip k -> q -> k.
    Real k(mpq_class(3, 10), prec);
    Modulus m = Modulus::from_k(k, ctx);
    Modulus back = modulus_from_nome(nome(m, ctx), ctx);
    REQUIRE(abs(back.k() - k) <= tol(ctx, 4));
    REQUIRE(abs(back.k() * back.k() + back.kprime() * back.kprime() - 1) <= tol(ctx, 4));

    // Known singular values from the nome side.
    Real pi = Real::pi(prec);
    Modulus m7 = modulus_from_nome(exp(-pi * sqrt(Real(7, prec))), ctx);
    Real k7 = (3 - sqrt(Real(7, prec))) / (4 * sqrt(Real(2, prec)));
    REQUIRE(abs(m7.k() - k7) <= tol(ctx, 4));

    Modulus m2 = modulus_from_nome(exp(-pi * sqrt(Real(2, prec))), ctx);
    REQUIRE(abs(m2.k() - (sqrt(Real(2, prec)) - 1)) <= tol(ctx, 4));
}

TEST_CASE("hypergeometric partial sums") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();
    mpq_class half(1, 2), one(1);

    // K(k) = (pi/2) 2F1(1/2,1/2;1;k^2) — series route vs AGM route.
    Real k(mpq_class(2, 5), prec);
    Real series = Real::pi(prec) / 2 * hyp_2f1(half, half, one, k * k, ctx);
    REQUIRE(abs(series - ellip_k(Modulus::from_k(k, ctx), ctx)) <= tol(ctx, 4));

    // Quadratic transformation: 2F1(2a,2b;a+b+1/2;z) = 2F1(a,b;a+b+1/2;4z(1-z)).
    mpq_class a(1, 8), b(3, 8);
    Real z(mpq_class(1, 10), prec);
    Real lhs = hyp_2f1(2 * a, 2 * b, a + b + half, z, ctx);
    Real rhs = hyp_2f1(a, b, a + b + half, 4 * z * (1 - z), ctx);
    REQUIRE(abs(lhs - rhs) <= tol(ctx, 4));

    REQUIRE_THROWS_AS(hyp_2f1(half, half, one, Real(1, prec), ctx), std::domain_error);
    REQUIRE_THROWS_AS(hyp_2f1(half, half, mpq_class(0), Real(mpq_class(1, 2), prec), ctx),
                      std::domain_error);
    REQUIRE_THROWS_AS(hyp_2f1(half, half, mpq_class(-3), Real(mpq_class(1, 2), prec), ctx),
                      std::domain_error);

    // z = 0 gives exactly 1.
    REQUIRE(hyp_2f1(half, half, one, Real(0, prec), ctx) == Real(1, prec));
    REQUIRE(hyp_3f2(half, half, half, one, one, Real(0, prec), ctx) == Real(1, prec));
}

TEST_CASE("transformation audit inside the ranges") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();

    Modulus m = Modulus::from_k(Real(mpq_class(1, 5), prec), ctx);
    auto checks = check_transformations(m, ctx);
    REQUIRE(checks.size() == 12);
    for (const auto& c : checks) {
        INFO(c.name << " " << c.note);
        REQUIRE(c.in_range);
        REQUIRE(c.checked);
        REQUIRE(c.defect <= tol(ctx, 4));
    }
}

TEST_CASE("clausen product consistency at k = 0.3") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();
    Modulus m = Modulus::from_k(Real(mpq_class(3, 10), prec), ctx);
    auto checks = check_transformations(m, ctx);
    const auto& f1 = checks[0]; // (2/pi)K form in 2F1(1/4,1/4;1;.)
    const auto& f2 = checks[1]; // its Clausen square in 3F2
    REQUIRE(f1.checked);
    REQUIRE(f2.checked);
    REQUIRE(abs(f1.rhs * f1.rhs - f2.rhs) <= tol(ctx, 4));
}

TEST_CASE("transformation audit at the lemniscatic boundary") {
    PrecisionContext ctx(100);
    const auto prec = ctx.bits();
    Modulus m = Modulus::from_k(sqrt(Real(mpq_class(1, 2), prec)), ctx);
    auto checks = check_transformations(m, ctx);

    // The (2kk')^2 rows hit z = 1 and must fall back to Gauss/Dixon forms.
    REQUIRE(checks[0].checked);
    REQUIRE(checks[0].note.find("Gauss") != std::string::npos);
    REQUIRE(checks[0].defect <= tol(ctx, 4));
    REQUIRE(checks[1].checked);
    REQUIRE(checks[1].note.find("Dixon") != std::string::npos);
    REQUIRE(checks[1].defect <= tol(ctx, 4));

    for (const auto& c : checks) {
        INFO(c.name << " " << c.note);
        if (c.checked) REQUIRE(c.defect <= tol(ctx, 4));
    }

    // 1/J = 1 here; the 2F1 row has a Gauss form, the 3F2 row must be skipped.
    REQUIRE(checks[6].checked);
    REQUIRE(checks[11].in_range);
    REQUIRE_FALSE(checks[11].checked);
}

TEST_CASE("transformation audit rejects k outside all ranges") {
    PrecisionContext ctx(60);
    const auto prec = ctx.bits();
    Modulus m = Modulus::from_k(Real("0.95", prec), ctx);
    REQUIRE_THROWS_AS(check_transformations(m, ctx), std::domain_error);
}

TEST_CASE("closed forms at the unit argument agree with near-boundary sums") {
    PrecisionContext ctx(40);
    const auto prec = ctx.bits();
    mpq_class q14(1, 4), one(1);
    // 2F1(1/4,1/4;1;z) as z->1 approaches the Gauss value like sqrt(1-z).
    Real gauss = hyp_2f1_at_unit(q14, q14, one, ctx);
    Real nearby = hyp_2f1(q14, q14, one, Real("0.9999", prec), ctx);
    REQUIRE(abs(gauss - nearby) <= Real("0.01", prec));
    // Kummer at -1 vs direct alternating sum at z = -0.9999.
    Real kummer = hyp_2f1_at_minus_unit(q14, q14, ctx);
    Real nearby2 = hyp_2f1(q14, q14, one, Real("-0.9999", prec), ctx);
    REQUIRE(abs(kummer - nearby2) <= Real("0.01", prec));
}
