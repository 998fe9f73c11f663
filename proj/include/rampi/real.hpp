#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "rampi/precision.hpp"

namespace rampi {

/**
 * Arbitrary-precision float with value semantics over mpfr_t.
 *
 * Every Real carries its own binary precision, fixed at construction; binary
 * operations round to the larger precision of the two operands (MPFR rounds
 * to nearest).  There is no implicit global precision: callers thread a
 * PrecisionContext and construct values with Real(x, ctx.bits()).
 */
class Real {
public:
    explicit Real(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(int x, mpfr_prec_t prec) : Real(static_cast<long>(x), prec) {}
    Real(const mpz_class& x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    // Parses a decimal literal, e.g. "1.8540746773...e0".
    Real(const char* s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0) {
            mpfr_clear(v_);
            throw std::invalid_argument(std::string("Real: unparsable literal: ") + s);
        }
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Exact rational value (every finite float is m * 2^e).
    mpq_class to_exact_rational() const {
        if (!mpfr_number_p(v_)) throw std::domain_error("Real: non-finite value");
        if (mpfr_zero_p(v_)) return mpq_class(0);
        mpz_class m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        mpq_class q(m);
        mpq_class two(2);
        if (e >= 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
            q *= p;
        } else {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            q /= p;
        }
        return q;
    }

    // Nearest integer (for coefficient recovery).
    mpz_class round_to_integer() const {
        Real r(prec());
        mpfr_round(r.v_, v_);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
        return z;
    }

    /**
     * Decimal string with `ndigits` significant digits, default rounding to
     * nearest.  Used for reporting; the CLI's digit printer uses
     * fractional_digits() instead, which truncates.
     */
    std::string to_string(size_t ndigits = 20) const {
        if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
        mpfr_exp_t e;
        char* raw = mpfr_get_str(nullptr, &e, 10, ndigits, v_, MPFR_RNDN);
        std::string digits(raw);
        mpfr_free_str(raw);
        std::string s;
        if (!digits.empty() && digits[0] == '-') {
            s = "-";
            digits.erase(0, 1);
        }
        if (digits.empty() || mpfr_zero_p(v_)) return s + "0";
        s += digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(e - 1);
        return s;
    }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    // 10^e at the given precision (e may be negative); exact for e >= 0
    // whenever the precision is large enough.
    static Real pow10(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(e >= 0 ? e : -e), MPFR_RNDN);
        if (e < 0) mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }

    friend Real operator+(const Real& a, long b) { Real r(a); r += b; return r; }
    friend Real operator-(const Real& a, long b) { Real r(a); r -= b; return r; }
    friend Real operator*(const Real& a, long b) { Real r(a); r *= b; return r; }
    friend Real operator/(const Real& a, long b) { Real r(a); r /= b; return r; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    // |a| < |b|, no rounding involved.
    friend bool abs_less(const Real& a, const Real& b) { return mpfr_cmpabs(a.v_, b.v_) < 0; }

private:
    template <typename F>
    static Real binop(const Real& a, const Real& b, F f) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// log10 |x| without under/overflow: reads the binary exponent directly, so it
// works for magnitudes far outside double range.  -inf for zero.
inline double log10_magnitude(const Real& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

inline Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real sqrt(const Real& x) {
    if (x.sign() < 0) throw std::domain_error("sqrt: negative argument");
    Real r(x.prec());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

// k-th root, k >= 1; negative x rejected (even for odd k, callers never need it).
inline Real rootn(const Real& x, unsigned long k) {
    if (x.sign() < 0) throw std::domain_error("rootn: negative radicand");
    Real r(x.prec());
    mpfr_rootn_ui(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

inline Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

inline Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real log(const Real& x) {
    if (x.sign() <= 0) throw std::domain_error("log: non-positive argument");
    Real r(x.prec());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real log10(const Real& x) {
    if (x.sign() <= 0) throw std::domain_error("log10: non-positive argument");
    Real r(x.prec());
    mpfr_log10(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real sinh(const Real& x) {
    Real r(x.prec());
    mpfr_sinh(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real sin(const Real& x) {
    Real r(x.prec());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real cos(const Real& x) {
    Real r(x.prec());
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real cosh(const Real& x) {
    Real r(x.prec());
    mpfr_cosh(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real tanh(const Real& x) {
    Real r(x.prec());
    mpfr_tanh(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real gamma(const Real& x) {
    Real r(x.prec());
    mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace rampi
