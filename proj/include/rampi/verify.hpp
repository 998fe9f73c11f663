#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rampi/elliptic.hpp"
#include "rampi/invariants.hpp"
#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"
#include "rampi/series.hpp"
#include "rampi/surd.hpp"
#include "rampi/tables.hpp"

namespace rampi {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string defect;      // largest measured defect, scientific notation
    std::string tolerance;   // "1e-98" style
    std::string detail;      // names of failing rows etc., empty when clean
};

namespace detail {

inline std::string defect_str(const Real& d) {
    return d.is_zero() ? std::string("0") : d.to_string(3);
}

} // namespace detail

/**
 * The full self-check battery at the given precision.  Tolerances scale as
 * 10^-(digits - slack), the slack growing with how many cancellations each
 * route stacks up: 2 for Legendre, 4 for the transformation identities, 6
 * for the two 1/pi routes, 8 for the table, 12 for the recovered integer
 * residuals.  The lattice-sum checks run at a fixed 50 digits (the sums
 * converge slowly) and the recovery check at no fewer than 60 (its rational
 * recognition needs the room).  Needs digits >= 30, else std::domain_error.
 */
inline std::vector<CheckResult> run_verification(long digits, const SingularTable& table) {
    if (digits < 30)
        throw std::domain_error("precision too low for the table suite (need --digits >= 30)");
    PrecisionContext ctx(digits);
    const mpfr_prec_t prec = ctx.bits();
    std::vector<CheckResult> out;

    auto push = [&](std::string name, const Real& defect, long tol_exp, std::string detail,
                    bool extra_ok = true) {
        Real tol = Real::pow10(tol_exp, prec);
        out.push_back({std::move(name), extra_ok && abs_less(defect, tol),
                       detail::defect_str(defect), "1e" + std::to_string(tol_exp),
                       std::move(detail)});
    };

    // Legendre relation E K' + E' K - K K' = pi/2 at 20 reproducible moduli.
    {
        std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
        std::uniform_real_distribution<double> dist(0.02, 0.98);
        Real worst(prec);
        for (int i = 0; i < 20; ++i) {
            Modulus m = Modulus::from_k(Real(std::to_string(dist(gen)).c_str(), prec), ctx);
            Real d = abs(legendre_defect(m, ctx));
            if (worst < d) worst = d;
        }
        push("legendre-relation", worst, -(digits - 2), "20 random moduli");
    }

    // The twelve alternate hypergeometric forms of (2/pi)K and its square.
    {
        Real worst(prec);
        unsigned long rows_checked = 0;
        for (const char* ks : {"0.15", "0.38", "0.55", "0.66"}) {
            Modulus m = Modulus::from_k(Real(ks, prec), ctx);
            for (const auto& c : check_transformations(m, ctx)) {
                if (!c.checked) continue;
                ++rows_checked;
                Real d = abs(c.defect);
                if (worst < d) worst = d;
            }
        }
        push("transformation-identities", worst, -(digits - 4),
             std::to_string(rows_checked) + " identity evaluations");
    }

    // Every singular-value table row: k_N, the invariant, alpha(N), units.
    {
        Real worst(prec);
        std::string bad;
        bool all = true;
        for (const auto& rep : verify_table(table, ctx)) {
            for (const Real* d : {&rep.k_defect, &rep.inv12_defect, &rep.alpha_defect})
                if (worst < *d) worst = *d;
            if (!rep.pass) {
                all = false;
                bad += (bad.empty() ? "row N=" : ", row N=") + std::to_string(rep.N);
                bad += rep.invariant_kind == 'G' ? " (G)" : " (g)";
            }
        }
        push("singular-value-table", worst, -(digits - 8), bad, all);
    }

    // 1/pi recovered from K, E and alpha at the singular modulus.
    {
        Real worst(prec);
        for (unsigned long r : {2UL, 7UL, 58UL}) {
            Real d = abs(reciprocal_pi_defect(r, ctx));
            if (worst < d) worst = d;
        }
        push("reciprocal-pi-identity", worst, -(digits - 6), "N = 2, 7, 58");
    }

    // Lattice sums against the class invariants, fixed 50-digit precision.
    {
        PrecisionContext lctx(50);
        Real worst(lctx.bits());
        for (unsigned long r : {2UL, 6UL, 10UL, 58UL}) {
            Real d = abs(lattice_g_defect(r, lctx));
            if (worst < d) worst = d;
        }
        push("lattice-sum-invariant", worst, -30, "r = 2, 6, 10, 58");

        Real k = lambda_star(58, lctx).k();
        Real rhs = SurdExpr::parse("198*sqrt(2)*(13*sqrt(29)+70)").eval(lctx);
        push("lattice-k58-closed-form", abs(k + 1L / k - rhs), -40, "");
    }

    // Pochhammer triple products equal their factorial-quotient forms, exactly.
    {
        bool ok = true;
        mpq_class half(1, 2), quarter(1, 4), three_quarter(3, 4), sixth(1, 6), five_sixth(5, 6);
        for (unsigned long n = 0; n <= 200 && ok; ++n) {
            mpq_class fn(factorial(n));
            mpq_class f3 = fn * fn * fn;
            mpq_class p = pochhammer(half, n);
            ok = ok && p * p * p * pow_z(mpz_class(64), n) ==
                           mpq_class(coefficient_integer(CoefficientFamily::half_cubed, n)) * f3;
            ok = ok && pochhammer(quarter, n) * pochhammer(half, n) *
                               pochhammer(three_quarter, n) * pow_z(mpz_class(256), n) ==
                           mpq_class(coefficient_integer(
                               CoefficientFamily::quarter_half_three_quarter, n)) *
                               f3;
            ok = ok && pochhammer(sixth, n) * pochhammer(half, n) * pochhammer(five_sixth, n) *
                               pow_z(mpz_class(1728), n) ==
                           mpq_class(coefficient_integer(
                               CoefficientFamily::sixth_half_five_sixth, n)) *
                               f3;
        }
        out.push_back({"pochhammer-exactness", ok, "0", "exact", "n <= 200, three families"});
    }

    // Series built from table rows normalize back to published integer pairs.
    {
        PrecisionContext rctx(std::max<long>(digits, 60));
        long rdigits = rctx.digits;
        Real worst(rctx.bits());
        std::string bad;
        bool all = true;
        struct Want {
            SeriesForm form;
            unsigned long N;
            long A, B;
        };
        for (const Want& w : {Want{SeriesForm::G_form, 7, 5, 42},
                              Want{SeriesForm::y_form, 37, 1123, 21460},
                              Want{SeriesForm::x_form, 58, 1103, 26390}}) {
            try {
                NormalizedSeries ns = normalize(build_series(w.form, table.find(w.N)), rctx);
                if (ns.A != w.A || ns.B != w.B) {
                    all = false;
                    bad += (bad.empty() ? "" : ", ") + std::string("N=") + std::to_string(w.N) +
                           " recovered (" + ns.A.get_str() + ", " + ns.B.get_str() + ")";
                }
                for (const Real* d : {&ns.residual_linear, &ns.residual_base})
                    if (worst < *d) worst = *d;
            } catch (const std::exception& e) {
                all = false;
                bad += (bad.empty() ? "" : ", ") + std::string("N=") + std::to_string(w.N) +
                       " failed: " + e.what();
            }
        }
        push("integer-recovery", worst, -(rdigits - 12), bad, all);
    }

    return out;
}

} // namespace rampi
