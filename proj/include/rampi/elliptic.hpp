#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"

namespace rampi {

/**
 * Elliptic modulus pair (k, k') with k^2 + k'^2 = 1, both in (0,1).
 * Construct via from_k / from_kprime, which derive the partner as
 * sqrt((1-x)(1+x)) at the context's working precision.
 */
class Modulus {
public:
    static Modulus from_k(const Real& k, const PrecisionContext& ctx) {
        require_open_unit(k, "Modulus::from_k");
        Real kp = sqrt((1 - k) * (1 + k));
        (void)ctx;
        return Modulus(k, kp);
    }
    static Modulus from_kprime(const Real& kprime, const PrecisionContext& ctx) {
        require_open_unit(kprime, "Modulus::from_kprime");
        Real k = sqrt((1 - kprime) * (1 + kprime));
        (void)ctx;
        return Modulus(k, kprime);
    }
    // Both members given (e.g. from theta quotients); the caller guarantees
    // k^2 + k'^2 = 1 to working precision.
    static Modulus from_pair(const Real& k, const Real& kprime) {
        require_open_unit(k, "Modulus::from_pair");
        require_open_unit(kprime, "Modulus::from_pair");
        return Modulus(k, kprime);
    }

    const Real& k() const { return k_; }
    const Real& kprime() const { return kprime_; }

    Modulus complementary() const { return Modulus(kprime_, k_); }

private:
    Modulus(Real k, Real kprime) : k_(std::move(k)), kprime_(std::move(kprime)) {}

    static void require_open_unit(const Real& x, const char* who) {
        if (x <= 0L || x >= 1L)
            throw std::domain_error(std::string(who) + ": modulus must lie in (0,1), got " +
                                    x.to_string(8));
    }

    Real k_, kprime_;
};

struct ThetaTriple {
    Real t2, t3, t4;
};

/**
 * Arithmetic-geometric mean of a, b > 0.  Iterates a <- (a+b)/2,
 * b <- sqrt(ab) until |a-b| < 10^-(digits+guard); quadratic convergence
 * makes this ~log2(digits) rounds.
 */
inline Real agm(const Real& a0, const Real& b0, const PrecisionContext& ctx) {
    if (a0.sign() <= 0 || b0.sign() <= 0)
        throw std::domain_error("agm: arguments must be positive");
    const mpfr_prec_t prec = ctx.bits();
    Real a(a0), b(b0);
    Real thresh = Real::pow10(-ctx.working_decimals(), prec);
    for (int iter = 0; iter < 200; ++iter) {
        if (abs_less(a - b, thresh)) return (a + b) / 2;
        Real an = (a + b) / 2;
        b = sqrt(a * b);
        a = std::move(an);
    }
    throw std::runtime_error("agm: failed to converge");
}

/** Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')). */
inline Real ellip_k(const Modulus& m, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.bits();
    return Real::pi(prec) / (2 * agm(Real(1, prec), m.kprime(), ctx));
}

/**
 * Complete elliptic integral of the second kind via the AGM side sum:
 * with a0 = 1, b0 = k', c0 = k and c_{n+1} = (a_n - b_n)/2,
 *   E = K (1 - sum_{n>=0} 2^(n-1) c_n^2).
 */
inline Real ellip_e(const Modulus& m, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.bits();
    Real a(1, prec), b(m.kprime());
    Real csum = m.k() * m.k() / 2;
    Real pow2(1, prec);
    Real thresh = Real::pow10(-ctx.working_decimals(), prec);
    for (int iter = 0; iter < 200; ++iter) {
        Real c = (a - b) / 2;
        csum += pow2 * c * c;
        Real an = (a + b) / 2;
        b = sqrt(a * b);
        a = std::move(an);
        pow2 *= 2;
        if (abs_less(c, thresh) && abs_less(a - b, thresh)) {
            Real K = Real::pi(prec) / (2 * ((a + b) / 2));
            return K * (1 - csum);
        }
    }
    throw std::runtime_error("ellip_e: failed to converge");
}

/** dK/dk = (E - k'^2 K) / (k k'^2). */
inline Real dK_dk(const Modulus& m, const PrecisionContext& ctx) {
    Real K = ellip_k(m, ctx);
    Real E = ellip_e(m, ctx);
    Real kp2 = m.kprime() * m.kprime();
    return (E - kp2 * K) / (m.k() * kp2);
}

/** dE/dk = (E - K) / k. */
inline Real dE_dk(const Modulus& m, const PrecisionContext& ctx) {
    return (ellip_e(m, ctx) - ellip_k(m, ctx)) / m.k();
}

/** K E' + E K' - K K' - pi/2; identically zero for every modulus. */
inline Real legendre_defect(const Modulus& m, const PrecisionContext& ctx) {
    Modulus c = m.complementary();
    Real K = ellip_k(m, ctx), E = ellip_e(m, ctx);
    Real Kp = ellip_k(c, ctx), Ep = ellip_e(c, ctx);
    return K * Ep + E * Kp - K * Kp - Real::pi(ctx.bits()) / 2;
}

/**
 * Jacobi theta constants at nome q in (0,1):
 *   theta2 = 2 sum q^((n+1/2)^2),  theta3 = 1 + 2 sum q^(n^2),
 *   theta4 = 1 + 2 sum (-1)^n q^(n^2).
 * Terms are added until they drop below 10^-(digits+guard).
 */
inline ThetaTriple theta(const Real& q, const PrecisionContext& ctx) {
    if (q <= 0L || q >= 1L)
        throw std::domain_error("theta: nome must lie in (0,1), got " + q.to_string(8));
    const mpfr_prec_t prec = ctx.bits();
    Real thresh = Real::pow10(-ctx.working_decimals(), prec);
    Real q2 = q * q;

    // theta3/theta4 share powers q^(n^2); p advances by q^(2n+1) each step.
    Real s3(1, prec), s4(1, prec);
    {
        Real p(q), qodd(q);
        int sign = -1;
        while (!abs_less(p, thresh)) {
            s3 += 2 * p;
            s4 += sign * (2 * p);
            qodd *= q2;
            p *= qodd;
            sign = -sign;
        }
    }

    // theta2 = 2 q^(1/4) sum q^(n(n+1)); p advances by q^(2n) each step.
    Real s2(1, prec);
    {
        Real p(1, prec), step(q2);
        while (true) {
            p *= step;
            if (abs_less(p, thresh)) break;
            s2 += p;
            step *= q2;
        }
        s2 *= 2 * rootn(q, 4);
    }
    return ThetaTriple{std::move(s2), std::move(s3), std::move(s4)};
}

/** Nome q = exp(-pi K'(k) / K(k)). */
inline Real nome(const Modulus& m, const PrecisionContext& ctx) {
    Real Kp = ellip_k(m.complementary(), ctx);
    Real K = ellip_k(m, ctx);
    return exp(-(Real::pi(ctx.bits()) * Kp / K));
}

/** Inverse of nome(): k = (theta2/theta3)^2, k' = (theta4/theta3)^2. */
inline Modulus modulus_from_nome(const Real& q, const PrecisionContext& ctx) {
    ThetaTriple t = theta(q, ctx);
    Real t3sq = t.t3 * t.t3;
    Real k = (t.t2 * t.t2) / t3sq;
    Real kp = (t.t4 * t.t4) / t3sq;
    return Modulus::from_pair(k, kp);
}

namespace detail {

// Shared pFq partial-sum kernel.  `num`/`den` are the upper and lower
// parameter lists (an implicit lower parameter n! is always present).  For
// every parameter set used here the upper parameters are dominated by the
// lower ones, so |t_{n+1}/t_n| <= |z| and the geometric tail bound
// |t_{n+1}|/(1-|z|) is rigorous; for other parameters the bound also tracks
// the measured ratio once it falls below 1.
inline Real hyp_sum(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den,
                    const Real& z, const PrecisionContext& ctx) {
    for (const auto& d : den)
        if (d <= 0 && d.get_den() == 1)
            throw std::domain_error("hypergeometric: lower parameter is a non-positive integer");
    const mpfr_prec_t prec = ctx.bits();
    Real az = abs(z);
    if (az >= 1L) throw std::domain_error("hypergeometric: |z| must be < 1");

    Real thresh = Real::pow10(-ctx.working_decimals(), prec);
    Real t(1, prec), sum(1, prec);
    Real one_minus_az = 1 - az;
    const long cap = 10'000'000;
    for (long n = 0; n < cap; ++n) {
        mpq_class r(1);
        for (const auto& a : num) r *= a + n;
        for (const auto& d : den) r /= d + n;
        r /= n + 1;
        t *= Real(r, prec) * z;
        sum += t;
        // Tail bound: geometric with the larger of |z| and the measured ratio.
        Real ratio = abs(Real(r, prec) * z);
        Real rho = ratio > az ? ratio : az;
        if (rho < 1L && abs_less(abs(t) * rho / (1 - rho), thresh)) return sum;
    }
    throw std::runtime_error("hypergeometric: no convergence within term budget (|z| too close to 1)");
}

} // namespace detail

/** Gauss series 2F1(a,b;c;z) for |z| < 1, rational parameters. */
inline Real hyp_2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c, const Real& z,
                    const PrecisionContext& ctx) {
    return detail::hyp_sum({a, b}, {c}, z, ctx);
}

/** 3F2(a1,a2,a3;b1,b2;z) for |z| < 1, rational parameters. */
inline Real hyp_3f2(const mpq_class& a1, const mpq_class& a2, const mpq_class& a3,
                    const mpq_class& b1, const mpq_class& b2, const Real& z,
                    const PrecisionContext& ctx) {
    return detail::hyp_sum({a1, a2, a3}, {b1, b2}, z, ctx);
}

namespace detail {

inline Real gamma_q(const mpq_class& q, mpfr_prec_t prec) { return gamma(Real(q, prec)); }

} // namespace detail

/** Gauss's summation theorem: 2F1(a,b;c;1) for c-a-b > 0. */
inline Real hyp_2f1_at_unit(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                            const PrecisionContext& ctx) {
    if (c - a - b <= 0)
        throw std::domain_error("hyp_2f1_at_unit: divergent, needs c-a-b > 0");
    const mpfr_prec_t p = ctx.bits();
    using detail::gamma_q;
    return gamma_q(c, p) * gamma_q(c - a - b, p) / (gamma_q(c - a, p) * gamma_q(c - b, p));
}

/** Kummer's theorem: 2F1(a,b;1+a-b;-1). */
inline Real hyp_2f1_at_minus_unit(const mpq_class& a, const mpq_class& b,
                                  const PrecisionContext& ctx) {
    const mpfr_prec_t p = ctx.bits();
    using detail::gamma_q;
    mpq_class half(1, 2);
    return gamma_q(1 + a - b, p) * gamma_q(1 + a * half, p) /
           (gamma_q(1 + a, p) * gamma_q(1 + a * half - b, p));
}

/** Dixon's theorem: 3F2(a,b,c;1+a-b,1+a-c;1) for a/2-b-c > -1. */
inline Real hyp_3f2_wellpoised_at_unit(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                       const PrecisionContext& ctx) {
    mpq_class half_a = a / 2;
    if (half_a - b - c <= -1)
        throw std::domain_error("hyp_3f2_wellpoised_at_unit: divergent parameters");
    const mpfr_prec_t p = ctx.bits();
    using detail::gamma_q;
    return gamma_q(1 + half_a, p) * gamma_q(1 + a - b, p) * gamma_q(1 + a - c, p) *
           gamma_q(1 + half_a - b - c, p) /
           (gamma_q(1 + a, p) * gamma_q(1 + half_a - b, p) * gamma_q(1 + half_a - c, p) *
            gamma_q(1 + a - b - c, p));
}

/**
 * One row of the transformation audit: an alternate hypergeometric
 * representation of (2/pi)K or its square, its validity range, and the
 * measured defect |lhs - rhs| at the audited modulus.
 */
struct TransformationCheck {
    std::string name;
    std::string range;
    bool in_range;
    bool checked;   // false when out of range, or |z|=1 with no closed form
    std::string note;
    Real lhs, rhs, defect;
};

/**
 * Audits the twelve alternate hypergeometric forms of (2/pi)K(k) and
 * [(2/pi)K(k)]^2 against the AGM value.  Each identity is evaluated only on
 * its stated k-range.  When the hypergeometric argument lands on the unit
 * circle (which happens exactly at the range endpoints), the series is
 * replaced by the Gauss / Kummer / Dixon closed form where one applies;
 * otherwise the row is reported as skipped.  Throws if k lies outside every
 * stated range.
 */
inline std::vector<TransformationCheck> check_transformations(const Modulus& m,
                                                              const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.bits();
    const Real& k = m.k();
    const Real& kp = m.kprime();

    Real pi = Real::pi(prec);
    Real L1 = 2 * ellip_k(m, ctx) / pi;
    Real L2 = L1 * L1;

    Real k2 = k * k, kp2 = kp * kp;
    Real kkp = k * kp;
    Real G12 = 1 / (2 * kkp);
    Real g12 = kp2 / (2 * k);
    Real one_m_kkp2 = 1 - kkp * kkp;
    Real J = (4 * pow_si(one_m_kkp2, 3)) / (27 * pow_si(kkp, 4));

    // Stated range endpoints.
    Real sqrt2 = sqrt(Real(2, prec));
    Real b_invsqrt2 = 1 / sqrt2;
    Real b_sqrt2m1 = sqrt2 - 1;
    Real b_k2form = sqrt(2 * (sqrt2 - 1));
    Real b_Gform = (1 - sqrt(sqrt2 - 1)) / rootn(Real(8, prec), 4); // 2^(3/4)

    // Tolerance for "on the boundary" decisions.
    Real edge = Real::pow10(-ctx.digits / 2, prec);

    auto in = [&](const Real& bound) { return k <= bound + edge; };

    mpq_class q14(1, 4), q12(1, 2), q18(1, 8), q38(3, 8), q112(1, 12), q512(5, 12), q34(3, 4),
        q16(1, 6), q56(5, 6), one(1);

    enum class Edge { gauss, kummer, none };
    struct Row {
        const char* name;
        const char* range;
        bool is_square;           // rhs approximates L2 instead of L1
        Real bound, prefactor, z;
        std::vector<mpq_class> num, den;
        Edge edge_form;
    };

    std::vector<Row> rows;
    Real z1 = pow_si(2 * kkp, 2);
    rows.push_back({"quarter_2f1_2kkp", "k in [0, 1/sqrt(2)]", false, b_invsqrt2, Real(1, prec),
                    z1, {q14, q14}, {one}, Edge::gauss});
    rows.push_back({"half_3f2_2kkp", "k in [0, 1/sqrt(2)]", true, b_invsqrt2, Real(1, prec), z1,
                    {q12, q12, q12}, {one, one}, Edge::gauss}); // Dixon, special-cased below
    Real z2 = -pow_si(2 * k / kp2, 2);
    rows.push_back({"quarter_2f1_neg_2k_kp2", "k in [0, sqrt(2)-1]", false, b_sqrt2m1, 1 / kp, z2,
                    {q14, q14}, {one}, Edge::kummer});
    Real z3 = -pow_si(k2 / (2 * kp), 2);
    rows.push_back({"quarter_2f1_neg_k2_2kp", "k^2 in [0, 2(sqrt(2)-1)]", false, b_k2form,
                    1 / sqrt(kp), z3, {q14, q14}, {one}, Edge::kummer});
    Real z4 = pow_si(2 / (g12 + 1 / g12), 2);
    rows.push_back({"eighth_2f1_x_g", "k in [0, sqrt(2)-1]", false, b_sqrt2m1, 1 / sqrt(1 + k2),
                    z4, {q18, q38}, {one}, Edge::gauss});
    Real z5 = -pow_si(2 / (G12 - 1 / G12), 2);
    rows.push_back({"eighth_2f1_neg_y_G", "k in [0, (1-sqrt(sqrt(2)-1))/2^(3/4)]", false, b_Gform,
                    1 / sqrt(kp2 - k2), z5, {q18, q38}, {one}, Edge::none});
    Real z6 = 1 / J;
    rows.push_back({"twelfth_2f1_inv_j", "k in [0, 1/sqrt(2)]", false, b_invsqrt2,
                    1 / rootn(one_m_kkp2, 4), z6, {q112, q512}, {one}, Edge::gauss});
    rows.push_back({"half_3f2_neg_2k_kp2", "k in [0, sqrt(2)-1]", true, b_sqrt2m1, 1 / kp2, z2,
                    {q12, q12, q12}, {one, one}, Edge::none});
    rows.push_back({"half_3f2_neg_k2_2kp", "k^2 in [0, 2(sqrt(2)-1)]", true, b_k2form, 1 / kp, z3,
                    {q12, q12, q12}, {one, one}, Edge::none});
    rows.push_back({"qtq_3f2_x_g", "k in [0, sqrt(2)-1]", true, b_sqrt2m1, 1 / (1 + k2), z4,
                    {q14, q34, q12}, {one, one}, Edge::none});
    rows.push_back({"qtq_3f2_neg_y_G", "k in [0, (1-sqrt(sqrt(2)-1))/2^(3/4)]", true, b_Gform,
                    1 / (kp2 - k2), z5, {q14, q34, q12}, {one, one}, Edge::none});
    rows.push_back({"sixth_3f2_inv_j", "k in [0, 1/sqrt(2)]", true, b_invsqrt2,
                    1 / sqrt(one_m_kkp2), z6, {q16, q56, q12}, {one, one}, Edge::none});

    std::vector<TransformationCheck> out;
    bool any_in_range = false;
    for (auto& r : rows) {
        TransformationCheck c{r.name,  r.range,       false,
                              false,   "",            r.is_square ? L2 : L1,
                              Real(prec), Real(prec)};
        c.in_range = in(r.bound);
        if (c.in_range) {
            any_in_range = true;
            Real az = abs(r.z);
            if (az + edge < 1L) {
                c.rhs = r.prefactor * detail::hyp_sum(r.num, r.den, r.z, ctx);
                c.checked = true;
            } else if (abs(az - 1) <= edge) {
                // On the unit circle: use a closed form where one exists.
                if (r.edge_form == Edge::gauss && r.z.sign() > 0 && r.num.size() == 2) {
                    c.rhs = r.prefactor * hyp_2f1_at_unit(r.num[0], r.num[1], r.den[0], ctx);
                    c.checked = true;
                    c.note = "|z|=1: Gauss closed form";
                } else if (r.edge_form == Edge::gauss && r.z.sign() > 0 && r.num.size() == 3) {
                    c.rhs = r.prefactor *
                            hyp_3f2_wellpoised_at_unit(r.num[0], r.num[1], r.num[2], ctx);
                    c.checked = true;
                    c.note = "|z|=1: Dixon closed form";
                } else if (r.edge_form == Edge::kummer && r.z.sign() < 0) {
                    c.rhs = r.prefactor * hyp_2f1_at_minus_unit(r.num[0], r.num[1], ctx);
                    c.checked = true;
                    c.note = "|z|=1: Kummer closed form";
                } else {
                    c.note = "skipped: |z|=1 and no closed form implemented";
                }
            } else {
                c.note = "skipped: |z| > 1";
            }
            if (c.checked) c.defect = abs(c.lhs - c.rhs);
        } else {
            c.note = "out of range";
        }
        out.push_back(std::move(c));
    }
    if (!any_in_range)
        throw std::domain_error(
            "check_transformations: k = " + k.to_string(8) +
            " lies outside every stated validity range (largest bound sqrt(2(sqrt(2)-1)) ~ 0.9102)");
    return out;
}

} // namespace rampi
