#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"
#include "rampi/surd.hpp"
#include "rampi/tables.hpp"

namespace rampi {

// Coefficient sequence a_n of a series.  The first three are the integer
// central-coefficient forms
//   half_cubed:               binom(2n,n)^3            = [(2n)!]^3 / (n!)^6
//   quarter_half_three_quarter: (4n)! / (n!)^4
//   sixth_half_five_sixth:      (6n)! / ((3n)! (n!)^3)
// named after the rational parameter triples (1/2,1/2,1/2), (1/4,1/2,3/4)
// and (1/6,1/2,5/6) whose Pochhammer products they encode:
//   (1/2)_n^3            = half_cubed(n) / 64^n
//   (1/4)_n(1/2)_n(3/4)_n = quarter(n) * (n!)^3 / 256^n ... etc.
// chan_cooper is the rational double sum
//   a_n = sum_{m=0..n} (-1)^(n-m) 64^(-m) (4m)!/(m!)^4 binom(n+m, n-m),
// whose 64^n-scaled values are integers.  `elementary` marks series whose
// terms are not of hypergeometric product type (Gregory, Basel, Brouncker).
enum class CoefficientFamily {
    half_cubed,
    quarter_half_three_quarter,
    sixth_half_five_sixth,
    chan_cooper,
    elementary,
};

// Exponent e(n) applied to the base: the published series use a small set of
// affine shapes in n.
enum class ExponentPattern {
    n,                  // e(n) = n
    two_n,              // e(n) = 2n
    two_n_plus_one,     // e(n) = 2n + 1
    three_n,            // e(n) = 3n
    three_n_plus_half,  // e(n) = 3(n + 1/2)
    twelve_n_plus_half, // e(n) = 12(n + 1/2)
};

enum class SeriesKind { hypergeometric, gregory, euler_zeta2, brouncker };

enum class SeriesTarget { reciprocal_pi, quarter_pi, zeta_two, four_over_pi };

inline mpz_class coefficient_integer(CoefficientFamily f, unsigned long n) {
    switch (f) {
    case CoefficientFamily::half_cubed: {
        mpz_class c = binomial(2 * n, n);
        return c * c * c;
    }
    case CoefficientFamily::quarter_half_three_quarter: {
        mpz_class r = factorial(4 * n);
        mpz_class d = pow_z(factorial(n), 4);
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
        return r;
    }
    case CoefficientFamily::sixth_half_five_sixth: {
        mpz_class r = factorial(6 * n);
        mpz_class d = factorial(3 * n) * pow_z(factorial(n), 3);
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
        return r;
    }
    default:
        throw std::logic_error("coefficient_integer: family has no integer coefficients");
    }
}

/** Exact coefficient a_n for any hypergeometric-type family. */
inline mpq_class series_coefficient(CoefficientFamily f, unsigned long n) {
    if (f == CoefficientFamily::chan_cooper) {
        // sum_{m=0..n} (-1)^(n-m) (4m)!/(m!)^4 C(n+m, n-m) / 64^m, computed
        // over the common denominator 64^n with both inner factors stepped
        // incrementally (each quotient below is exact).
        mpz_class c(1);               // (4m)!/(m!)^4
        mpz_class binom(1);           // C(n+m, n-m)
        mpz_class p64 = pow_z(mpz_class(64), n);
        mpz_class num(0);
        for (unsigned long m = 0; m <= n; ++m) {
            if (m > 0) {
                c *= mpz_class(4 * m) * (4 * m - 1) * (4 * m - 2) * (4 * m - 3);
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(),
                             pow_z(mpz_class(m), 4).get_mpz_t());
                binom *= mpz_class(n + m) * (n - m + 1);
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), (2 * m - 1) * 2 * m);
                mpz_divexact_ui(p64.get_mpz_t(), p64.get_mpz_t(), 64);
            }
            mpz_class term = c * binom * p64;
            num += (n - m) % 2 == 1 ? -term : term;
        }
        mpq_class acc(num, pow_z(mpz_class(64), n));
        acc.canonicalize();
        return acc;
    }
    return mpq_class(coefficient_integer(f, n));
}

// Step ratio a_i / a_{i-1} for i >= 1, exact.  Only the three product-form
// families have a fixed-degree rational step.
inline mpq_class coefficient_step(CoefficientFamily f, unsigned long i) {
    if (i == 0) throw std::domain_error("coefficient_step: i must be >= 1");
    mpz_class i3 = pow_z(mpz_class(i), 3);
    mpq_class r;
    switch (f) {
    case CoefficientFamily::half_cubed:
        r = mpq_class(8 * pow_z(mpz_class(2 * i - 1), 3), i3);
        break;
    case CoefficientFamily::quarter_half_three_quarter:
        r = mpq_class(mpz_class(8) * (4 * i - 3) * (2 * i - 1) * (4 * i - 1), i3);
        break;
    case CoefficientFamily::sixth_half_five_sixth:
        r = mpq_class(mpz_class(24) * (6 * i - 5) * (2 * i - 1) * (6 * i - 1), i3);
        break;
    default:
        throw std::logic_error("coefficient_step: family has no fixed step ratio");
    }
    r.canonicalize();
    return r;
}

// Supremum of coefficient_step over all i (the steps increase towards it).
inline long coefficient_growth_limit(CoefficientFamily f) {
    switch (f) {
    case CoefficientFamily::half_cubed: return 64;
    case CoefficientFamily::quarter_half_three_quarter: return 256;
    case CoefficientFamily::sixth_half_five_sixth: return 1728;
    case CoefficientFamily::chan_cooper: return 1; // asymptotic growth of |a_n|^(1/n)
    default:
        throw std::logic_error("coefficient_growth_limit: elementary family");
    }
}

inline int pattern_step(ExponentPattern p) {
    switch (p) {
    case ExponentPattern::n: return 1;
    case ExponentPattern::two_n: return 2;
    case ExponentPattern::two_n_plus_one: return 2;
    case ExponentPattern::three_n: return 3;
    case ExponentPattern::three_n_plus_half: return 3;
    case ExponentPattern::twelve_n_plus_half: return 12;
    }
    throw std::logic_error("pattern_step: unknown pattern");
}

inline mpq_class pattern_offset(ExponentPattern p) {
    switch (p) {
    case ExponentPattern::two_n_plus_one: return mpq_class(1);
    case ExponentPattern::three_n_plus_half: return mpq_class(3, 2);
    case ExponentPattern::twelve_n_plus_half: return mpq_class(6);
    default: return mpq_class(0);
    }
}

inline mpq_class pattern_exponent(ExponentPattern p, unsigned long n) {
    return mpq_class(static_cast<long>(n)) * pattern_step(p) + pattern_offset(p);
}

inline std::string pattern_name(ExponentPattern p) {
    switch (p) {
    case ExponentPattern::n: return "n";
    case ExponentPattern::two_n: return "2n";
    case ExponentPattern::two_n_plus_one: return "2n+1";
    case ExponentPattern::three_n: return "3n";
    case ExponentPattern::three_n_plus_half: return "3(n+1/2)";
    case ExponentPattern::twelve_n_plus_half: return "12(n+1/2)";
    }
    throw std::logic_error("pattern_name: unknown pattern");
}

inline std::string family_name(CoefficientFamily f) {
    switch (f) {
    case CoefficientFamily::half_cubed: return "half-cubed";
    case CoefficientFamily::quarter_half_three_quarter: return "quarter-half-three-quarter";
    case CoefficientFamily::sixth_half_five_sixth: return "sixth-half-five-sixth";
    case CoefficientFamily::chan_cooper: return "chan-cooper";
    case CoefficientFamily::elementary: return "elementary";
    }
    throw std::logic_error("family_name: unknown family");
}

inline std::string kind_name(SeriesKind k) {
    switch (k) {
    case SeriesKind::hypergeometric: return "hypergeometric";
    case SeriesKind::gregory: return "gregory";
    case SeriesKind::euler_zeta2: return "euler-zeta2";
    case SeriesKind::brouncker: return "brouncker";
    }
    throw std::logic_error("kind_name: unknown kind");
}

inline std::string target_name(SeriesTarget t) {
    switch (t) {
    case SeriesTarget::reciprocal_pi: return "1/pi";
    case SeriesTarget::quarter_pi: return "pi/4";
    case SeriesTarget::zeta_two: return "pi^2/6";
    case SeriesTarget::four_over_pi: return "4/pi";
    }
    throw std::logic_error("target_name: unknown target");
}

inline Real target_value(SeriesTarget t, const PrecisionContext& ctx) {
    Real pi = Real::pi(ctx.bits());
    switch (t) {
    case SeriesTarget::reciprocal_pi: return 1L / pi;
    case SeriesTarget::quarter_pi: return pi / 4L;
    case SeriesTarget::zeta_two: return pi * pi / 6L;
    case SeriesTarget::four_over_pi: return 4L / pi;
    }
    throw std::logic_error("target_value: unknown target");
}

/**
 * One series in canonical form.  For hypergeometric kinds the value is
 *
 *   multiplier * sum_{n>=0} (-1)^(n [alternating]) a_n (A + B n) base^(e(n))
 *
 * with a_n from `family` and e(n) from `pattern`.  The three elementary
 * kinds reuse A and B for their term law:
 *   gregory:     sum (-1)^n / (A + B n)         -> pi/4
 *   euler_zeta2: sum 1 / (A + B n)^2            -> pi^2/6
 *   brouncker:   A + A^2/(2 + (A+B)^2/(2+...))  -> 4/pi  (odd squares (A+Bn)^2)
 * Multiplier, A, B, base are exact surd expressions so specs can be
 * serialized and rebuilt without precision loss.
 */
struct SeriesSpec {
    std::string key;
    std::string provenance;
    SeriesKind kind = SeriesKind::hypergeometric;
    CoefficientFamily family = CoefficientFamily::elementary;
    ExponentPattern pattern = ExponentPattern::n;
    SurdExpr multiplier, A, B, base;
    bool alternating = false;
    SeriesTarget target = SeriesTarget::reciprocal_pi;

    SeriesSpec()
        : multiplier(SurdExpr::integer(1)), A(SurdExpr::integer(0)), B(SurdExpr::integer(0)),
          base(SurdExpr::integer(1)) {}
};

namespace detail {

inline SeriesSpec make_spec(std::string key, std::string provenance, SeriesKind kind,
                            CoefficientFamily family, ExponentPattern pattern,
                            const char* multiplier, const char* A, const char* B,
                            const char* base, bool alternating, SeriesTarget target) {
    SeriesSpec s;
    s.key = std::move(key);
    s.provenance = std::move(provenance);
    s.kind = kind;
    s.family = family;
    s.pattern = pattern;
    s.multiplier = SurdExpr::parse(multiplier);
    s.A = SurdExpr::parse(A);
    s.B = SurdExpr::parse(B);
    s.base = SurdExpr::parse(base);
    s.alternating = alternating;
    s.target = target;
    return s;
}

} // namespace detail

/**
 * The built-in series catalog: five classical reciprocal-pi series derived
 * from singular values (N = 7 three ways, 37, 58), the two record-setting
 * Ramanujan-Sato series (Chudnovsky, Chan-Cooper), and three elementary
 * benchmarks used for convergence comparisons.
 */
inline const std::vector<SeriesSpec>& catalog() {
    using K = SeriesKind;
    using F = CoefficientFamily;
    using P = ExponentPattern;
    using T = SeriesTarget;
    static const std::vector<SeriesSpec> entries = {
        detail::make_spec("ramanujan7_g", "G-form, N=7; Ramanujan (1914), eq. 29",
                          K::hypergeometric, F::half_cubed, P::two_n,
                          "1/16", "5", "42", "1/64", false, T::reciprocal_pi),
        detail::make_spec("ramanujan7_y", "y-form, N=7; Ramanujan (1914)",
                          K::hypergeometric, F::quarter_half_three_quarter, P::two_n,
                          "sqrt(7)/63", "8", "65", "1/63", true, T::reciprocal_pi),
        detail::make_spec("ramanujan7_j", "J-form, N=7; Ramanujan (1914), eq. 34",
                          K::hypergeometric, F::sixth_half_five_sixth, P::three_n,
                          "(18/85)*sqrt(3/85)", "8", "133", "1/255", false, T::reciprocal_pi),
        detail::make_spec("ramanujan37", "y-form, N=37; Ramanujan (1914), eq. 39",
                          K::hypergeometric, F::quarter_half_three_quarter, P::two_n,
                          "1/3528", "1123", "21460", "1/14112", true, T::reciprocal_pi),
        detail::make_spec("ramanujan58", "x-form, N=58; Ramanujan (1914), eq. 44",
                          K::hypergeometric, F::quarter_half_three_quarter, P::two_n,
                          "2*sqrt(2)/9801", "1103", "26390", "1/156816", false, T::reciprocal_pi),
        detail::make_spec("chudnovsky", "J-form, N=163; Chudnovsky & Chudnovsky (1988)",
                          K::hypergeometric, F::sixth_half_five_sixth, P::three_n_plus_half,
                          "12", "13591409", "545140134", "1/640320", true, T::reciprocal_pi),
        detail::make_spec("chan_cooper", "Ramanujan-Sato type; Chan & Cooper (2012)",
                          K::hypergeometric, F::chan_cooper, P::twelve_n_plus_half,
                          "2*sqrt(2)", "9801*sqrt(29)/2 - 24184", "9801*sqrt(29)",
                          "(sqrt(29)-5)/2", false, T::reciprocal_pi),
        detail::make_spec("gregory", "alternating odd reciprocals; Gregory (1671), Leibniz (1674)",
                          K::gregory, F::elementary, P::n,
                          "1", "1", "2", "1", true, T::quarter_pi),
        detail::make_spec("euler_zeta2", "reciprocal squares; Euler (1735)",
                          K::euler_zeta2, F::elementary, P::n,
                          "1", "1", "1", "1", false, T::zeta_two),
        detail::make_spec("brouncker", "continued fraction, odd-square numerators; Brouncker (1655)",
                          K::brouncker, F::elementary, P::n,
                          "1", "1", "2", "1", false, T::four_over_pi),
    };
    return entries;
}

inline const SeriesSpec& find_series(const std::string& key) {
    for (const SeriesSpec& s : catalog())
        if (s.key == key) return s;
    throw std::out_of_range("find_series: no catalog entry named \"" + key + "\"");
}

struct EvaluationReport {
    Real value;
    Real tail_bound;
    unsigned long terms = 0;
    double measured_digits_per_term = 0.0;

    explicit EvaluationReport(mpfr_prec_t prec) : value(prec), tail_bound(prec) {}
};

namespace detail {

// Bound |a_n| <= (n+1) 16^n for the chan_cooper double sum: each inner term
// is at most (4m)!/(m!)^4 / 64^m * binom(n+m,n-m) <= 4^m * 2^(n+m) <= 16^n.
inline Real chan_cooper_term_bound(unsigned long n, const Real& A, const Real& B,
                                   const Real& base_pow) {
    mpz_class ub = (mpz_class(n) + 1) * pow_z(mpz_class(16), n);
    return Real(ub, A.prec()) * (abs(A) + abs(B) * static_cast<long>(n)) * base_pow;
}

inline EvaluationReport evaluate_hypergeometric(const SeriesSpec& spec, const PrecisionContext& ctx,
                                                unsigned long term_cap, unsigned long fixed_terms) {
    const mpfr_prec_t prec = ctx.bits();
    EvaluationReport rep(prec);

    const Real A = spec.A.eval(ctx);
    const Real B = spec.B.eval(ctx);
    const Real M = spec.multiplier.eval(ctx);
    const Real base = spec.base.eval(ctx);
    const int s = pattern_step(spec.pattern);
    const Real base_s = pow_si(base, s);
    const Real abs_base_s = abs(base_s);

    // Hard convergence guard: per-term ratios approach growth * |base|^s from
    // below, so the series diverges (or converges uselessly slowly) at >= 1.
    // The chan_cooper tail estimate rests on |a_n| <= (n+1) 16^n, so it needs
    // the stronger margin 64 |base|^s < 1 to stay geometric.
    const bool chan = spec.family == CoefficientFamily::chan_cooper;
    const long growth = coefficient_growth_limit(spec.family);
    if (!(abs_base_s * (chan ? 64L : growth) < 1L))
        throw std::domain_error("evaluate_direct: series \"" + spec.key +
                                "\" does not converge (per-term ratio >= 1)");
    const Real thresh = Real::pow10(-(ctx.working_decimals() + 3), prec);

    // c = a_n * base^(e(n)), updated by the exact family step; for the
    // chan_cooper family only the power is recursive and a_n is summed fresh.
    Real power0 = spec.base.pow(pattern_offset(spec.pattern)).eval(ctx);
    Real c = power0;
    Real power = power0; // chan_cooper path: base^(e(n))
    Real sum(prec);
    Real last_abs_term(prec);
    double first_log10 = 0.0, last_log10 = 0.0;
    int sign = 1;

    unsigned long n = 0;
    for (;; ++n) {
        if (n >= term_cap)
            throw std::runtime_error("evaluate_direct: series \"" + spec.key +
                                     "\" did not reach the requested accuracy within " +
                                     std::to_string(term_cap) + " terms");
        if (chan) c = Real(series_coefficient(spec.family, n), prec) * power;
        Real term = c * (A + B * static_cast<long>(n));
        sum += sign < 0 ? -term : term;
        last_abs_term = abs(term);
        last_log10 = log10_magnitude(last_abs_term);
        if (n == 0) first_log10 = last_log10;

        // Rigorous tail bound after n: remaining terms shrink at least
        // geometrically with the worst-case ratio rho.
        Real rho(prec);
        if (chan) {
            rho = abs_base_s * 64L; // 16 * 2 * 2 safety factors from the bound above
            Real next = chan_cooper_term_bound(n + 1, A, B, abs(power) * abs_base_s);
            rep.tail_bound = next / (1L - rho);
        } else {
            // The per-step linear ratio decreases towards 1, so its current
            // value bounds all later steps.  Early on it can push rho past 1
            // even for convergent series; no usable bound exists yet then.
            Real lin_ratio = abs((A + B * static_cast<long>(n + 1)) / (A + B * static_cast<long>(n)));
            rho = abs_base_s * growth * (lin_ratio > Real(1L, prec) ? lin_ratio : Real(1L, prec));
            if (rho < 1L)
                rep.tail_bound = last_abs_term * rho / (1L - rho);
            else
                mpfr_set_inf(rep.tail_bound.get(), 1);
        }

        bool done = fixed_terms > 0 ? (n + 1 == fixed_terms) : (rep.tail_bound <= thresh);
        if (done) break;

        if (chan) {
            power *= base_s;
        } else {
            c *= Real(coefficient_step(spec.family, n + 1), prec);
            c *= base_s;
        }
        if (spec.alternating) sign = -sign;
    }

    rep.terms = n + 1;
    rep.value = M * sum;
    rep.tail_bound = abs(M) * rep.tail_bound;
    if (rep.terms >= 2)
        rep.measured_digits_per_term =
            (first_log10 - last_log10) / static_cast<double>(rep.terms - 1);
    return rep;
}

inline EvaluationReport evaluate_elementary(const SeriesSpec& spec, const PrecisionContext& ctx,
                                            unsigned long term_cap) {
    const mpfr_prec_t prec = ctx.bits();
    EvaluationReport rep(prec);
    const long a = spec.A.as_rational().value().get_num().get_si();
    const long b = spec.B.as_rational().value().get_num().get_si();
    const Real thresh = Real::pow10(-(ctx.working_decimals() + 3), prec);

    if (spec.kind == SeriesKind::brouncker) {
        // Bottom-up continued-fraction evaluation with depth doubling; the
        // change between consecutive depths estimates the remaining error.
        Real prev(prec);
        Real value(prec);
        unsigned long depth = 64;
        for (;;) {
            Real v(2, prec);
            for (unsigned long m = depth - 1; m >= 1; --m) {
                long num = a + b * static_cast<long>(m);
                v = 2L + Real(num, prec) * num / v;
            }
            prev = value;
            value = a + Real(a, prec) * a / v;
            rep.terms = depth;
            rep.tail_bound = abs(value - prev); // depth-doubling delta, an estimate
            if (depth >= term_cap || (depth > 64 && rep.tail_bound <= thresh)) break;
            depth *= 2;
            if (depth > term_cap) depth = term_cap;
        }
        rep.value = value;
        rep.measured_digits_per_term = 0.0;
        return rep;
    }

    Real sum(prec);
    int sign = 1;
    unsigned long n = 0;
    for (; n < term_cap; ++n) {
        Real den(a + b * static_cast<long>(n), prec);
        Real term = spec.kind == SeriesKind::euler_zeta2 ? 1L / (den * den) : 1L / den;
        sum += sign < 0 ? -term : term;
        if (spec.alternating) sign = -sign;
        // Alternating series: tail <= first omitted term.  Reciprocal squares:
        // tail sum_{m > a+bn} 1/m^2 < 1/(a+bn).
        Real next(a + b * static_cast<long>(n + 1), prec);
        rep.tail_bound = spec.kind == SeriesKind::euler_zeta2 ? 1L / den : 1L / next;
        if (rep.tail_bound <= thresh) { ++n; break; }
    }
    rep.terms = n;
    rep.value = sum;
    return rep;
}

} // namespace detail

/**
 * Sums a series term by term at the context precision.  Stops once a rigorous
 * bound on the remaining tail drops below the working accuracy, or after
 * `fixed_terms` terms when that is nonzero.  Hypergeometric series throw if
 * `term_cap` is reached first; the elementary kinds stop at the cap and
 * report the tail bound they achieved (their error decays far too slowly to
 * meet high-precision targets).  Throws std::domain_error when the per-term
 * ratio is >= 1, i.e. the series cannot converge.
 */
inline EvaluationReport evaluate_direct(const SeriesSpec& spec, const PrecisionContext& ctx,
                                        unsigned long term_cap = 10'000'000,
                                        unsigned long fixed_terms = 0) {
    if (spec.kind == SeriesKind::hypergeometric)
        return detail::evaluate_hypergeometric(spec, ctx, term_cap, fixed_terms);
    if (fixed_terms > 0) term_cap = fixed_terms;
    return detail::evaluate_elementary(spec, ctx, term_cap);
}

/**
 * Asymptotic decimal digits gained per term: -log10 of the limiting per-term
 * ratio growth * |base|^step.  Zero for the elementary series, whose error
 * decays sub-geometrically.
 */
inline double digits_per_term(const SeriesSpec& spec) {
    if (spec.kind != SeriesKind::hypergeometric) return 0.0;
    PrecisionContext ctx(20);
    double base = std::fabs(spec.base.eval(ctx).to_double());
    double rho = static_cast<double>(coefficient_growth_limit(spec.family)) *
                 std::pow(base, pattern_step(spec.pattern));
    return rho > 0 ? -std::log10(rho) : 0.0;
}

/**
 * Decimal digits gained per term measured between two concrete terms:
 * (log10 |t_from| - log10 |t_to|) / (to - from) with t_n the exact n-th term.
 */
inline double measured_digits_per_term(const SeriesSpec& spec, unsigned long from, unsigned long to,
                                       const PrecisionContext& ctx) {
    if (spec.kind != SeriesKind::hypergeometric)
        throw std::domain_error("measured_digits_per_term: hypergeometric series only");
    if (to <= from) throw std::domain_error("measured_digits_per_term: need to > from");
    const Real A = spec.A.eval(ctx);
    const Real B = spec.B.eval(ctx);
    auto term_log10 = [&](unsigned long n) {
        Real c(series_coefficient(spec.family, n), ctx.bits());
        Real p = spec.base.pow(pattern_exponent(spec.pattern, n)).eval(ctx);
        return log10_magnitude(c * (A + B * static_cast<long>(n)) * p);
    };
    return (term_log10(from) - term_log10(to)) / static_cast<double>(to - from);
}

// The six series shapes derivable from one singular-value table row.  Tags
// name the modular quantity whose powers supply the base: the class
// invariants G and g, the composite invariant g4N (g at 4N), the rational
// combinations x = 2/(g^12 + g^-12) and y = 2/(G^12 - G^-12), and the Klein
// invariant J.
enum class SeriesForm { G_form, g_form, g4N_form, x_form, y_form, J_form };

inline std::string series_form_name(SeriesForm f) {
    switch (f) {
    case SeriesForm::G_form: return "G-form";
    case SeriesForm::g_form: return "g-form";
    case SeriesForm::g4N_form: return "g4N-form";
    case SeriesForm::x_form: return "x-form";
    case SeriesForm::y_form: return "y-form";
    case SeriesForm::J_form: return "J-form";
    }
    throw std::logic_error("series_form_name: unknown form");
}

/**
 * Builds the raw reciprocal-pi series of the requested shape from a
 * singular-value table row: exact surd expressions for the linear
 * coefficients A + Bn, the base, and the multiplier, before any integer
 * normalization.  The G shape needs N > 1 and the y shape N >= 4; other
 * shapes are built unconditionally and a non-convergent result is rejected
 * at evaluation time.
 */
inline SeriesSpec build_series(SeriesForm form, const SingularRecord& row) {
    const SurdExpr one = SurdExpr::integer(1);
    const SurdExpr two = SurdExpr::integer(2);
    const SurdExpr k = row.k;
    const SurdExpr k2 = k * k;
    const SurdExpr kp2 = one - k2;
    const SurdExpr kp = SurdExpr::sqrt(kp2);
    const SurdExpr sqrtN = SurdExpr::sqrt(SurdExpr::integer(static_cast<long>(row.N)));
    const SurdExpr al = row.alpha;
    // row.inv12 stores 1/G^12 for G-kind rows and 1/g^12 for g-kind rows;
    // the other invariant follows from 1/G^12 = 2kk' and 1/g^12 = 2k/k'^2.
    const SurdExpr G12 =
        row.invariant_kind == 'G' ? one / row.inv12 : one / (two * k * kp);
    const SurdExpr g12 = row.invariant_kind == 'g' ? one / row.inv12 : kp2 / (two * k);

    SeriesSpec s;
    s.kind = SeriesKind::hypergeometric;
    s.target = SeriesTarget::reciprocal_pi;
    s.key = "derived:" + series_form_name(form) + ":N=" + std::to_string(row.N);
    s.provenance = series_form_name(form) + ", N=" + std::to_string(row.N) +
                   "; built from the singular-value table";

    switch (form) {
    case SeriesForm::G_form:
        if (row.N < 2)
            throw std::domain_error("build_series: G-form requires N > 1");
        s.family = CoefficientFamily::half_cubed;
        s.pattern = ExponentPattern::two_n;
        s.A = al - sqrtN * k2;
        s.B = sqrtN * (kp2 - k2);
        s.base = one / (SurdExpr::integer(8) * G12);
        s.multiplier = one;
        s.alternating = false;
        break;
    case SeriesForm::g_form:
        s.family = CoefficientFamily::half_cubed;
        s.pattern = ExponentPattern::two_n;
        s.A = al / kp2;
        s.B = sqrtN * (one + k2) / kp2;
        s.base = one / (SurdExpr::integer(8) * g12);
        s.multiplier = one;
        s.alternating = true;
        break;
    case SeriesForm::g4N_form: {
        const SurdExpr g4N12 = SurdExpr::integer(8) * g12 * G12;
        s.family = CoefficientFamily::half_cubed;
        s.pattern = ExponentPattern::two_n;
        s.A = (al - sqrtN * k2 / two) / kp;
        s.B = sqrtN * (kp + one / kp);
        s.base = one / (SurdExpr::integer(8) * g4N12);
        s.multiplier = one;
        s.alternating = true;
        break;
    }
    case SeriesForm::x_form: {
        const SurdExpr x = two / (g12 + one / g12);
        s.family = CoefficientFamily::quarter_half_three_quarter;
        s.pattern = ExponentPattern::two_n_plus_one;
        s.A = al / (x * (one + k2)) - sqrtN / (SurdExpr::integer(4) * g12);
        s.B = sqrtN * (g12 - one / g12) / two;
        s.base = x / SurdExpr::integer(16);
        s.multiplier = SurdExpr::integer(16);
        s.alternating = false;
        break;
    }
    case SeriesForm::y_form: {
        if (row.N < 4)
            throw std::domain_error("build_series: y-form requires N >= 4");
        const SurdExpr y = two / (G12 - one / G12);
        s.family = CoefficientFamily::quarter_half_three_quarter;
        s.pattern = ExponentPattern::two_n_plus_one;
        s.A = al / (y * (kp2 - k2)) + sqrtN * k2 * G12 / two;
        s.B = sqrtN * (G12 + one / G12) / two;
        s.base = y / SurdExpr::integer(16);
        s.multiplier = SurdExpr::integer(16);
        s.alternating = true;
        break;
    }
    case SeriesForm::J_form: {
        const SurdExpr G24 = G12 * G12;
        const SurdExpr four_g24 = SurdExpr::integer(4) * G24 - one;
        const SurdExpr root = SurdExpr::sqrt(one - one / G24);
        const SurdExpr J = four_g24.pow(3) / (SurdExpr::integer(27) * G24);
        s.family = CoefficientFamily::sixth_half_five_sixth;
        s.pattern = ExponentPattern::two_n_plus_one;
        s.A = two * (al - sqrtN * k2) * four_g24 + sqrtN * root;
        s.B = two * sqrtN * (SurdExpr::integer(8) * G24 + one) * root;
        s.base = (SurdExpr::integer(1728) * J).pow(mpq_class(-1, 2));
        s.multiplier = SurdExpr::integer(8);
        s.alternating = false;
        break;
    }
    }
    return s;
}

/**
 * A raw series reduced to published shape: exponent offsets folded into the
 * multiplier, the base recognized as an exact rational, and the linear
 * coefficients scaled to the coprime integer pair (A, B) with the extracted
 * content absorbed into the multiplier.  residual_linear reports how far
 * A_raw strays from content * A (zero up to rounding when the pair really is
 * integral); residual_base reports |base - recognized rational|.
 */
struct NormalizedSeries {
    CoefficientFamily family = CoefficientFamily::elementary;
    ExponentPattern pattern = ExponentPattern::n;
    mpz_class A, B;
    mpq_class base;
    bool alternating = false;
    Real multiplier;
    Real residual_linear, residual_base;

    explicit NormalizedSeries(mpfr_prec_t prec)
        : multiplier(prec), residual_linear(prec), residual_base(prec) {}
};

namespace detail {

// Rational recognition with a denominator cap: continued-fraction convergents
// approximate any real arbitrarily well, so acceptance requires hitting the
// tolerance with a denominator far smaller than tol^(-1/2) allows.
inline mpq_class recognize_rational(const Real& x, const PrecisionContext& ctx,
                                    const std::string& what) {
    long tol_digits = ctx.digits - 12;
    if (tol_digits < 8) tol_digits = 8;
    mpq_class tol(1, pow_z(mpz_class(10), static_cast<unsigned long>(tol_digits)));
    mpq_class found = rational_reconstruct(x.to_exact_rational(), tol);
    mpz_class cap = pow_z(mpz_class(10), static_cast<unsigned long>(tol_digits / 4));
    if (found.get_den() > cap)
        throw std::domain_error("normalize: " + what + " does not round to a small rational");
    return found;
}

} // namespace detail

inline NormalizedSeries normalize(const SeriesSpec& spec, const PrecisionContext& ctx) {
    if (spec.kind != SeriesKind::hypergeometric)
        throw std::domain_error("normalize: hypergeometric series only");

    NormalizedSeries out(ctx.bits());
    out.family = spec.family;
    out.alternating = spec.alternating;

    // Fold the constant exponent offset into the multiplier.
    const mpq_class offset = pattern_offset(spec.pattern);
    Real mult = spec.multiplier.eval(ctx);
    if (offset != 0) mult *= spec.base.pow(offset).eval(ctx);
    switch (spec.pattern) {
    case ExponentPattern::two_n_plus_one: out.pattern = ExponentPattern::two_n; break;
    case ExponentPattern::three_n_plus_half: out.pattern = ExponentPattern::three_n; break;
    case ExponentPattern::twelve_n_plus_half:
        throw std::domain_error("normalize: no integer-exponent pattern for 12(n+1/2)");
    default: out.pattern = spec.pattern; break;
    }

    const Real base_real = spec.base.eval(ctx);
    out.base = detail::recognize_rational(base_real, ctx, "base");
    out.residual_base = abs(base_real - Real(out.base, ctx.bits()));

    // A and B share a common (often irrational) content; their ratio is the
    // reduced fraction A/B.
    const Real A_raw = spec.A.eval(ctx);
    const Real B_raw = spec.B.eval(ctx);
    mpq_class ratio = detail::recognize_rational(A_raw / B_raw, ctx, "A/B ratio");
    out.A = ratio.get_num();
    out.B = ratio.get_den();
    Real content = B_raw / Real(out.B, ctx.bits());
    out.residual_linear = abs(A_raw - content * Real(out.A, ctx.bits()));
    out.multiplier = mult * content;
    return out;
}

} // namespace rampi
