#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"
#include "rampi/series.hpp"

namespace rampi {

/**
 * True when a series can be summed by integer binary splitting: a
 * hypergeometric kind with a fixed-degree rational step ratio (the three
 * product-form families) and exact rational A, B and base fields.  The
 * multiplier and the constant exponent offset may stay irrational; they
 * enter once, outside the split.
 */
inline bool binary_split_supported(const SeriesSpec& spec) {
    if (spec.kind != SeriesKind::hypergeometric) return false;
    if (spec.family != CoefficientFamily::half_cubed &&
        spec.family != CoefficientFamily::quarter_half_three_quarter &&
        spec.family != CoefficientFamily::sixth_half_five_sixth)
        return false;
    return spec.A.as_rational().has_value() && spec.B.as_rational().has_value() &&
           spec.base.as_rational().has_value();
}

namespace detail {

struct SplitContext {
    CoefficientFamily family;
    bool alternating;
    mpq_class base_step; // base^(pattern step), the rational part of t_i / t_{i-1}
    mpz_class A, B;      // scaled to integers; the common denominator divides out later
};

struct SplitNode {
    mpz_class P, Q, T;
};

// Term ratio t_i / t_{i-1} as an exact fraction p/q (sign on p).
inline void term_ratio(const SplitContext& sc, unsigned long i, mpz_class& p, mpz_class& q) {
    mpq_class r = coefficient_step(sc.family, i) * sc.base_step;
    r.canonicalize();
    p = r.get_num();
    q = r.get_den();
    if (sc.alternating) p = -p;
}

// P(a,b) = prod p_i, Q(a,b) = prod q_i over a < i <= b, and
// T(a,b) = sum_{n=a}^{b-1} (A + Bn) prod_{a<i<=n} p_i prod_{n<i<=b} q_i,
// so that sum_{n=a}^{b-1} (A + Bn) t_n = t_a * T(a,b) / Q(a,b).
inline SplitNode split_range(const SplitContext& sc, unsigned long a, unsigned long b) {
    SplitNode node;
    if (b - a == 1) {
        term_ratio(sc, b, node.P, node.Q);
        node.T = (sc.A + sc.B * static_cast<long>(a)) * node.Q;
        return node;
    }
    unsigned long m = a + (b - a) / 2;
    SplitNode left = split_range(sc, a, m);
    SplitNode right = split_range(sc, m, b);
    node.P = left.P * right.P;
    node.Q = left.Q * right.Q;
    node.T = left.T * right.Q + left.P * right.T;
    return node;
}

} // namespace detail

/**
 * Partial sum of the first `n_terms` terms (n = 0 .. n_terms-1), including
 * the multiplier, computed with integer binary splitting.  Numerically
 * identical to direct summation up to final rounding, but costs
 * O(M(size) log n) big-integer work instead of n full-precision float
 * operations, which is what makes million-digit runs practical.
 */
inline Real binary_split_sum(const SeriesSpec& spec, unsigned long n_terms,
                             const PrecisionContext& ctx) {
    if (!binary_split_supported(spec))
        throw std::domain_error("binary_split_sum: series \"" + spec.key +
                                "\" has no exact rational term ratio");
    const mpfr_prec_t prec = ctx.bits();
    if (n_terms == 0) return Real(prec);

    detail::SplitContext sc;
    sc.family = spec.family;
    sc.alternating = spec.alternating;
    const mpq_class base_q = spec.base.as_rational().value();
    sc.base_step = pow_q(base_q, pattern_step(spec.pattern));

    // Scale A, B to integers; the shared denominator divides back out of the
    // final quotient.
    const mpq_class A_q = spec.A.as_rational().value();
    const mpq_class B_q = spec.B.as_rational().value();
    mpz_class D;
    mpz_lcm(D.get_mpz_t(), A_q.get_den().get_mpz_t(), B_q.get_den().get_mpz_t());
    mpq_class A_scaled = A_q * D, B_scaled = B_q * D;
    sc.A = A_scaled.get_num();
    sc.B = B_scaled.get_num();

    // t_0 = base^(e(0)); exact via the surd tree (e(0) may be half-integral).
    const Real t0 = spec.base.pow(pattern_offset(spec.pattern)).eval(ctx);
    const Real M = spec.multiplier.eval(ctx);

    if (n_terms == 1) return M * t0 * Real(sc.A, prec) / Real(D, prec);

    detail::SplitNode root = detail::split_range(sc, 0, n_terms);
    Real sum = Real(root.T, prec) / Real(root.Q, prec);
    return M * t0 * sum / Real(D, prec);
}

} // namespace rampi
