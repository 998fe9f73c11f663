#pragma once

#include <stdexcept>
#include <string>

#include "rampi/elliptic.hpp"
#include "rampi/precision.hpp"
#include "rampi/real.hpp"

namespace rampi {

/** Weber-style class invariants G = (2kk')^(-1/12) and g = (k'^2/2k)^(1/12). */
struct ClassInvariants {
    Real G;
    Real g;
};

inline ClassInvariants class_invariants(const Modulus& m, const PrecisionContext&) {
    Real k = m.k(), kp = m.kprime();
    Real G = rootn(1L / (2L * k * kp), 12);
    Real g = rootn(kp * kp / (2L * k), 12);
    return {G, g};
}

/** Modulus with G = (2kk')^(-1/12); picks the branch k <= 1/sqrt(2). */
inline Modulus modulus_from_G(const Real& G, const PrecisionContext&) {
    Real x = 1L / pow_si(G, 12); // 2kk'
    Real sp = sqrt(1L + x), sm = sqrt(1L - x);
    // (sp - sm)/2 rewritten with the conjugate to avoid cancellation for small x.
    Real k = x / (sp + sm);
    Real kp = (sp + sm) / 2L;
    return Modulus::from_pair(k, kp);
}

/** Modulus with g = (k'^2/2k)^(1/12); k and k' are exact in g. */
inline Modulus modulus_from_g(const Real& g, const PrecisionContext&) {
    Real g12 = pow_si(g, 12);
    // k = sqrt(g^24 + 1) - g^12, stabilized against cancellation.
    Real k = 1L / (sqrt(pow_si(g12, 2) + 1L) + g12);
    Real kp = sqrt(2L * k) * pow_si(g, 6);
    return Modulus::from_pair(k, kp);
}

/**
 * Absolute Klein invariant J (normalized so J = 1 at k = 1/sqrt 2).  The
 * value is computed from the modulus and cross-checked against the two
 * invariant-based forms
 *     J = (4 G^24 - 1)^3 / (27 G^24) = (4 g^24 + 1)^3 / (27 g^24),
 * which must agree to nearly full working accuracy.
 */
inline Real klein_j(const Modulus& m, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Real k = m.k(), kp = m.kprime();
    Real kkp2 = pow_si(k * kp, 2);

    Real j_k = (4L * pow_si(1L - kkp2, 3)) / (27L * pow_si(kkp2, 2));

    ClassInvariants inv = class_invariants(m, ctx);
    Real G24 = pow_si(inv.G, 24);
    Real g24 = pow_si(inv.g, 24);
    Real j_G = pow_si(4L * G24 - 1L, 3) / (27L * G24);
    Real j_g = pow_si(4L * g24 + 1L, 3) / (27L * g24);

    Real rel_tol = Real::pow10(-(ctx.digits - 4), prec);
    if (!abs_less(j_G / j_k - 1L, rel_tol) || !abs_less(j_g / j_k - 1L, rel_tol))
        throw std::logic_error("klein_j: modulus and invariant forms disagree");
    return j_k;
}

/** Singular modulus lambda*(r): the k in (0,1) with K'/K = sqrt(r). */
inline Modulus lambda_star(unsigned long r, const PrecisionContext& ctx) {
    if (r == 0) throw std::domain_error("lambda_star: need r >= 1");
    mpfr_prec_t prec = ctx.bits();
    Real q = exp(-Real::pi(prec) * rootn(Real(static_cast<long>(r), prec), 2));
    return modulus_from_nome(q, ctx);
}

/**
 * Singular value alpha(r) = E'/K - pi/(4K^2) at k = lambda*(r).  Computed
 * through two routes related by the Legendre relation and K' = sqrt(r) K:
 * the definition above and pi/(4K^2) - sqrt(r)(E/K - 1).  Both must agree
 * to nearly full working accuracy; the second (cancellation-friendlier)
 * form is returned.
 */
inline Real alpha(unsigned long r, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Modulus m = lambda_star(r, ctx);
    Real K = ellip_k(m, ctx);
    Real E = ellip_e(m, ctx);
    Real Ep = ellip_e(m.complementary(), ctx);
    Real sqrt_r = rootn(Real(static_cast<long>(r), prec), 2);
    Real pi = Real::pi(prec);

    Real quarter = pi / (4L * K * K);
    Real a_def = Ep / K - quarter;
    Real a_leg = quarter - sqrt_r * (E / K - 1L);

    Real tol = Real::pow10(-(ctx.digits - 2), prec);
    if (!abs_less(a_def - a_leg, tol))
        throw std::logic_error("alpha: Legendre-rearranged route disagrees with definition");
    return a_leg;
}

/**
 * Residual of the singular-value representation of 1/pi,
 *   1/pi = sqrt(r) k k'^2 (2/pi)^2 K dK/dk + (alpha(r) - sqrt(r) k^2) ((2/pi)K)^2
 * at k = lambda*(r); near zero when the building blocks are consistent.
 */
inline Real reciprocal_pi_defect(unsigned long r, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Modulus m = lambda_star(r, ctx);
    Real k = m.k(), kp = m.kprime();
    Real K = ellip_k(m, ctx);
    Real dK = dK_dk(m, ctx);
    Real a = alpha(r, ctx);
    Real sqrt_r = rootn(Real(static_cast<long>(r), prec), 2);
    Real pi = Real::pi(prec);
    Real two_over_pi = 2L / pi;

    Real t1 = sqrt_r * k * kp * kp * two_over_pi * two_over_pi * K * dK;
    Real t2 = (a - sqrt_r * k * k) * pow_si(two_over_pi * K, 2);
    return t1 + t2 - 1L / pi;
}

/**
 * Alternating lattice sum S(r) = sum'_{(m,n)} (-1)^m / (m^2 + r n^2),
 * evaluated by row reduction to the exponentially convergent form
 *   S(r) = -pi^2/6 + (2 pi / sqrt r) sum_{n>=1} csch(pi n sqrt r) / n.
 */
inline Real lattice_sum(unsigned long r, const PrecisionContext& ctx) {
    if (r == 0) throw std::domain_error("lattice_sum: need r >= 1");
    mpfr_prec_t prec = ctx.bits();
    Real pi = Real::pi(prec);
    Real sqrt_r = rootn(Real(static_cast<long>(r), prec), 2);
    Real thresh = Real::pow10(-(ctx.working_decimals() + 5), prec);

    Real tail(0, prec);
    for (long n = 1; n < 100000; ++n) {
        Real term = 1L / (sinh(pi * Real(n, prec) * sqrt_r) * Real(n, prec));
        tail += term;
        if (abs_less(term, thresh)) break;
    }
    return -pi * pi / 6L + (2L * pi / sqrt_r) * tail;
}

/** Residual of S(r) = -(pi/sqrt r) log(2 g^4) with g the invariant at lambda*(r). */
inline Real lattice_g_defect(unsigned long r, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Real g = class_invariants(lambda_star(r, ctx), ctx).g;
    Real rhs = -(Real::pi(prec) / rootn(Real(static_cast<long>(r), prec), 2)) *
               log(2L * pow_si(g, 4));
    return lattice_sum(r, ctx) - rhs;
}

/** Residual of S(r) - 4 S(4r) = -(pi/sqrt r) log(lambda*(r)/4). */
inline Real lattice_k_defect(unsigned long r, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Real k = lambda_star(r, ctx).k();
    Real rhs = -(Real::pi(prec) / rootn(Real(static_cast<long>(r), prec), 2)) * log(k / 4L);
    return lattice_sum(r, ctx) - 4L * lattice_sum(4 * r, ctx) - rhs;
}

} // namespace rampi
