#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rampi/binary_splitting.hpp"
#include "rampi/precision.hpp"
#include "rampi/real.hpp"
#include "rampi/series.hpp"

namespace rampi {

// Build-time cap on the digit count the CLI will attempt.
inline constexpr long kMaxDigits = 1'000'000;

/**
 * Gauss-Legendre iteration for pi: a=1, b=1/sqrt(2), t=1/4, p=1, then
 * a' = (a+b)/2, b' = sqrt(ab), t -= p (a-a')^2, p *= 2 until |a-b| is below
 * the working accuracy; pi ~ (a+b)^2 / (4t).  Quadratic convergence, so
 * ~log2(digits) rounds.  Serves as the series-independent reference.
 */
inline Real agm_pi(const PrecisionContext& ctx, unsigned long* iterations = nullptr) {
    const mpfr_prec_t prec = ctx.bits();
    Real a(1, prec);
    Real b = 1L / sqrt(Real(2, prec));
    Real t(mpq_class(1, 4), prec);
    Real p(1, prec);
    Real eps = Real::pow10(-static_cast<long>(ctx.working_decimals()) - 2, prec);

    unsigned long it = 0;
    while (!abs_less(a - b, eps)) {
        if (++it > 1000) throw std::runtime_error("agm_pi: iteration failed to converge");
        Real an = (a + b) / 2L;
        Real d = a - an;
        b = sqrt(a * b);
        t -= p * d * d;
        p *= 2L;
        a = an;
    }
    if (iterations) *iterations = it;
    return (a + b) * (a + b) / (4L * t);
}

/**
 * Rough number of series terms needed for `digits` correct decimals of pi:
 * digits/rate for the geometrically convergent series, and the 1/n-error
 * counts for the elementary ones (20/10/50 * 10^digits for Gregory, Euler,
 * Brouncker).  Returns +inf once the count exceeds double range; the CLI
 * refuses any method whose estimate tops 10^9 terms.
 */
inline double estimated_terms(const SeriesSpec& spec, long digits) {
    if (spec.kind == SeriesKind::hypergeometric)
        return static_cast<double>(digits) / digits_per_term(spec) + 3.0;
    if (digits > 300) return HUGE_VAL;
    double scale = spec.kind == SeriesKind::gregory     ? 20.0
                   : spec.kind == SeriesKind::euler_zeta2 ? 10.0
                                                          : 50.0;
    return scale * std::pow(10.0, static_cast<double>(digits));
}

struct PiComputation {
    Real value;              // pi itself, whatever the series target was
    unsigned long terms = 0; // series terms summed, or AGM iterations
    explicit PiComputation(mpfr_prec_t prec) : value(prec) {}
};

/**
 * Computes pi by the named method ("agm" or a catalog key) at the context
 * precision.  Series with rational parameters go through binary splitting;
 * the Chan-Cooper series is summed directly under its tail bound.  The
 * elementary series sum however many terms their 1/n error rate demands for
 * `target_digits` decimals (default: the context's digit count), so they are
 * only usable for very small targets.  Throws std::out_of_range for an
 * unknown key and std::domain_error for an infeasible request.
 */
inline PiComputation compute_pi(const std::string& method, const PrecisionContext& ctx,
                                long target_digits = 0) {
    const mpfr_prec_t prec = ctx.bits();
    PiComputation out(prec);
    if (method == "agm") {
        out.value = agm_pi(ctx, &out.terms);
        return out;
    }

    const SeriesSpec& spec = find_series(method);
    Real s(prec);
    if (spec.kind == SeriesKind::hypergeometric) {
        unsigned long terms = static_cast<unsigned long>(
                                  ctx.working_decimals() / digits_per_term(spec)) +
                              3;
        if (binary_split_supported(spec)) {
            s = binary_split_sum(spec, terms, ctx);
            out.terms = terms;
        } else {
            // The rigorous tail bound decays more slowly than the true term
            // ratio, so leave headroom above the asymptotic estimate.
            EvaluationReport rep = evaluate_direct(spec, ctx, terms + terms / 2 + 32);
            s = rep.value;
            out.terms = rep.terms;
        }
    } else {
        if (target_digits <= 0) target_digits = ctx.digits;
        double need = estimated_terms(spec, target_digits);
        if (!(need < 2e9))
            throw std::domain_error("impractical method for requested digits");
        unsigned long n = static_cast<unsigned long>(need) + 16;
        EvaluationReport rep = evaluate_direct(spec, ctx, n, n);
        s = rep.value;
        out.terms = rep.terms;
    }

    switch (spec.target) {
    case SeriesTarget::reciprocal_pi: out.value = 1L / s; break;
    case SeriesTarget::quarter_pi:    out.value = 4L * s; break;
    case SeriesTarget::zeta_two:      out.value = sqrt(6L * s); break;
    case SeriesTarget::four_over_pi:  out.value = 4L / s; break;
    }
    return out;
}

/**
 * First `digits` decimals of x in [1, 10) after the point, truncated (never
 * rounded), as a bare digit string.  The caller guarantees x carries enough
 * precision; truncation near a digit boundary is caught by the recompute
 * guard in checked_pi_digits.
 */
inline std::string truncated_fraction(const Real& x, long digits) {
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits) + 1, x.get(),
                             MPFR_RNDZ);
    if (!raw) throw std::runtime_error("truncated_fraction: mpfr_get_str failed");
    std::string s(raw);
    mpfr_free_str(raw);
    if (e != 1 || s.size() < static_cast<size_t>(digits) + 1)
        throw std::logic_error("truncated_fraction: value not in [1, 10)");
    return s.substr(1, static_cast<size_t>(digits));
}

struct DigitResult {
    std::string fraction;    // digit string after "3."
    unsigned long terms = 0;
};

/**
 * Digits of pi by the named method, verified: the value is recomputed at
 * +20 (then +60, +140) extra digits of precision and the printed digits must
 * agree between two consecutive runs.  This guards against a truncation
 * boundary sitting inside the guard-digit noise of a single run.
 */
inline DigitResult checked_pi_digits(const std::string& method, long digits) {
    if (digits < 1) throw std::domain_error("digits must be >= 1");
    if (digits > kMaxDigits)
        throw std::domain_error("digits exceed the build-time cap of " +
                                std::to_string(kMaxDigits));
    const long base = std::max<long>(digits, 16);

    std::string prev;
    unsigned long prev_terms = 0;
    for (long extra : {0L, 20L, 60L, 140L}) {
        PrecisionContext ctx(base + extra);
        PiComputation pc = compute_pi(method, ctx, digits);
        std::string cur = truncated_fraction(pc.value, digits);
        if (!prev.empty() && cur == prev) return {cur, pc.terms};
        prev = std::move(cur);
        prev_terms = pc.terms;
    }
    (void)prev_terms;
    throw std::runtime_error("checked_pi_digits: printed digits failed to stabilize");
}

/** "3." + the fraction, wrapped to `per_line` digits per line, trailing newline. */
inline std::string wrap_pi_digits(const std::string& fraction, std::size_t per_line = 80) {
    std::string out = "3.";
    for (std::size_t i = 0; i < fraction.size(); i += per_line) {
        if (i) out += '\n';
        out += fraction.substr(i, per_line);
    }
    out += '\n';
    return out;
}

} // namespace rampi
