#pragma once

#include <stdexcept>

#include <gmpxx.h>

namespace rampi {

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline mpq_class pow_q(const mpq_class& b, long e) {
    mpq_class r;
    unsigned long mag = static_cast<unsigned long>(e >= 0 ? e : -e);
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(b.get_mpq_t()), mag);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(b.get_mpq_t()), mag);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw std::domain_error("pow_q: zero to negative power");
        r = 1 / r;
    }
    return r;
}

// Rising factorial (x)_n = x (x+1) ... (x+n-1) for rational x.
inline mpq_class pochhammer(const mpq_class& x, unsigned long n) {
    mpq_class r(1);
    mpq_class t(x);
    for (unsigned long i = 0; i < n; ++i) {
        r *= t;
        t += 1;
    }
    return r;
}

// Largest square-free divisor kernel: n with all squared prime factors removed.
inline unsigned long squarefree_kernel(unsigned long n) {
    if (n == 0) throw std::domain_error("squarefree_kernel: zero");
    unsigned long kernel = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            unsigned long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e % 2 == 1) kernel *= p;
        }
    }
    return kernel * n;
}

inline bool is_squarefree(unsigned long n) { return squarefree_kernel(n) == n; }

// Smallest-denominator rational within `tol` of `x`, found by walking the
// continued-fraction convergents of `x`.  Returns `x` itself if nothing
// simpler qualifies.
inline mpq_class rational_reconstruct(const mpq_class& x, const mpq_class& tol) {
    if (tol <= 0) throw std::domain_error("rational_reconstruct: tolerance must be positive");
    mpq_class rem(x);
    mpz_class h_prev(0), k_prev(1); // h_{-2}/k_{-2}
    mpz_class h(1), k(0);           // h_{-1}/k_{-1}
    for (int i = 0; i < 20000; ++i) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), mpq_numref(rem.get_mpq_t()), mpq_denref(rem.get_mpq_t()));
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        mpq_class conv(h, k);
        conv.canonicalize();
        if (abs(conv - x) <= tol) return conv;
        mpq_class frac = rem - a;
        if (frac == 0) return conv; // exact terminating expansion
        rem = 1 / frac;
    }
    throw std::runtime_error("rational_reconstruct: no convergent within tolerance");
}

} // namespace rampi
