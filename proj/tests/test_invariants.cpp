#include <catch2/catch_amalgamated.hpp>

#include "rampi/invariants.hpp"
#include "rampi/pell.hpp"
#include "rampi/surd.hpp"
#include "support/oracles.hpp"

using rampi::ClassInvariants;
using rampi::class_invariants;
using rampi::klein_j;
using rampi::lambda_star;
using rampi::Modulus;
using rampi::PrecisionContext;
using rampi::Real;
using rampi::SurdExpr;

TEST_CASE("class invariants invert back to the modulus") {
    const PrecisionContext ctx(60);
    Real tol = Real::pow10(-55, ctx.bits());

    for (const char* ks : {"0.3", "0.05", "0.65"}) {
        Real k(ks, ctx.bits());
        Modulus m = Modulus::from_k(k, ctx);
        ClassInvariants inv = class_invariants(m, ctx);

        Modulus viaG = modulus_from_G(inv.G, ctx);
        Modulus viag = modulus_from_g(inv.g, ctx);
        INFO("k = " << ks);
        CHECK(abs_less(viaG.k() - k, tol));
        CHECK(abs_less(viag.k() - k, tol));
        CHECK(abs_less(viaG.kprime() - m.kprime(), tol));
        CHECK(abs_less(viag.kprime() - m.kprime(), tol));
    }
}

TEST_CASE("invariant combinations reduce to stated modulus forms") {
    const PrecisionContext ctx(60);
    Real tol = Real::pow10(-55, ctx.bits());
    Real k("0.3", ctx.bits());
    Modulus m = Modulus::from_k(k, ctx);
    Real kp = m.kprime();
    ClassInvariants inv = class_invariants(m, ctx);
    Real g12 = pow_si(inv.g, 12), G12 = pow_si(inv.G, 12);

    // 2/(g^12 + g^-12) collapses to 4kk'^2/(1+k^2)^2.
    Real lhs_x = 2L / (g12 + 1L / g12);
    Real rhs_x = 4L * k * kp * kp / pow_si(1L + k * k, 2);
    CHECK(abs_less(lhs_x - rhs_x, tol));

    // 2/(G^12 - G^-12) collapses to 4kk'/(1-(2kk')^2).
    Real lhs_y = 2L / (G12 - 1L / G12);
    Real rhs_y = 4L * k * kp / (1L - pow_si(2L * k * kp, 2));
    CHECK(abs_less(lhs_y - rhs_y, tol));
}

TEST_CASE("Klein invariant matches classical singular values") {
    const PrecisionContext ctx(100);
    Real rel_tol = Real::pow10(-92, ctx.bits());

    Real j1 = klein_j(Modulus::from_k(rootn(Real(2, ctx.bits()), 2) / 2L, ctx), ctx);
    CHECK(abs_less(j1 - 1L, rel_tol));

    Real j2 = klein_j(lambda_star(2, ctx), ctx);
    CHECK(abs_less(j2 / Real(mpq_class(125, 27), ctx.bits()) - 1L, rel_tol));

    Real j7 = klein_j(lambda_star(7, ctx), ctx);
    Real j7_expected = pow_si(Real(mpq_class(85, 4), ctx.bits()), 3);
    CHECK(abs_less(j7 / j7_expected - 1L, rel_tol));
}

TEST_CASE("singular moduli satisfy the period ratio and closed forms") {
    const PrecisionContext ctx(100);
    mpfr_prec_t prec = ctx.bits();
    Real tol = Real::pow10(-92, prec);

    // K'/K = sqrt(r) is the defining property.
    for (unsigned long r : {2ul, 3ul, 5ul, 7ul, 58ul}) {
        Modulus m = lambda_star(r, ctx);
        Real ratio = rampi::ellip_k(m.complementary(), ctx) / rampi::ellip_k(m, ctx);
        INFO("r = " << r);
        CHECK(abs_less(ratio - rootn(Real(static_cast<long>(r), prec), 2), tol));
    }

    CHECK(abs_less(lambda_star(1, ctx).k() - rootn(Real(2, prec), 2) / 2L, tol));
    CHECK(abs_less(lambda_star(2, ctx).k() - SurdExpr::parse("sqrt(2)-1").eval(ctx), tol));
    CHECK(abs_less(lambda_star(4, ctx).k() - SurdExpr::parse("3-2*sqrt(2)").eval(ctx), tol));
    CHECK(abs_less(lambda_star(7, ctx).k() -
                       SurdExpr::parse("(3-sqrt(7))/(4*sqrt(2))").eval(ctx),
                   tol));
}

TEST_CASE("alpha takes classical values and approaches 1/pi from above") {
    const PrecisionContext ctx(100);
    mpfr_prec_t prec = ctx.bits();
    Real tol = Real::pow10(-92, prec);

    CHECK(abs_less(rampi::alpha(1, ctx) - Real(mpq_class(1, 2), prec), tol));
    CHECK(abs_less(rampi::alpha(2, ctx) - SurdExpr::parse("sqrt(2)-1").eval(ctx), tol));

    Real inv_pi = 1L / Real::pi(prec);
    for (unsigned long r : {1ul, 2ul, 5ul, 10ul, 58ul}) {
        Real excess = rampi::alpha(r, ctx) - inv_pi;
        Real sqrt_r = rootn(Real(static_cast<long>(r), prec), 2);
        Real bound = 16L * sqrt_r * exp(-Real::pi(prec) * sqrt_r);
        INFO("r = " << r);
        CHECK(excess.sign() > 0);
        CHECK(excess < bound);
    }
}

TEST_CASE("singular values reconstruct 1/pi") {
    const PrecisionContext ctx(100);
    Real tol = Real::pow10(-94, ctx.bits());
    for (unsigned long r : {2ul, 7ul, 58ul}) {
        INFO("r = " << r);
        CHECK(abs_less(rampi::reciprocal_pi_defect(r, ctx), tol));
    }
}

TEST_CASE("lattice sum row reduction agrees with brute force") {
    const PrecisionContext ctx(20);
    for (unsigned long r : {2ul, 6ul}) {
        double reduced = rampi::lattice_sum(r, ctx).to_double();
        double brute = rampi::testsupport::lattice_sum_bruteforce(static_cast<double>(r), 2000);
        INFO("r = " << r);
        CHECK(std::abs(reduced - brute) < 1e-5);
    }
}

TEST_CASE("lattice sum closed forms in the class invariants hold") {
    const PrecisionContext ctx(50);
    Real tol = Real::pow10(-30, ctx.bits());
    for (unsigned long r : {2ul, 6ul, 10ul, 58ul}) {
        INFO("r = " << r);
        CHECK(abs_less(rampi::lattice_g_defect(r, ctx), tol));
        CHECK(abs_less(rampi::lattice_k_defect(r, ctx), tol));
    }
}

TEST_CASE("singular modulus at 58 matches its quadratic-unit closed forms") {
    const PrecisionContext ctx(60);
    Real tol = Real::pow10(-40, ctx.bits());

    Modulus m = lambda_star(58, ctx);
    Real k = m.k();
    Real lhs = k + 1L / k;
    Real rhs = SurdExpr::parse("198*sqrt(2)*(13*sqrt(29)+70)").eval(ctx);
    CHECK(abs_less(lhs - rhs, tol));

    // g_58^2 equals the fundamental unit of Q(sqrt 29).
    Real g58 = class_invariants(m, ctx).g;
    Real u29 = rampi::fundamental_unit(29).eval(ctx);
    CHECK(abs_less(pow_si(g58, 2) - u29, tol));
}
