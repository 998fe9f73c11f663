#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "rampi/quadsurd.hpp"
#include "rampi/rational.hpp"

namespace rampi {

/**
 * Fundamental unit (> 1) of the ring of integers of Q(sqrt(d)) for
 * square-free d > 1, found with the continued-fraction (PQa) expansion of
 * the appropriate quadratic irrational.  With D the field discriminant
 * radicand (D = d throughout; half-integer coordinates appear only when
 * d = 1 mod 4), the convergents G, B of the expansion satisfy
 * G^2 - D B^2 = +-Q0^2 at the end of the first period, and the unit is
 * (G + B sqrt(D)) / Q0.
 */
inline QuadraticSurd fundamental_unit(unsigned long d) {
    if (d < 2 || !is_squarefree(d))
        throw std::domain_error("fundamental_unit: need square-free d > 1, got " +
                                std::to_string(d));

    const mpz_class D(static_cast<unsigned long>(d));
    mpz_class sqrtD;
    mpz_sqrt(sqrtD.get_mpz_t(), D.get_mpz_t());

    const bool half_coords = (d % 4 == 1);
    const mpz_class P0 = half_coords ? 1 : 0;
    const mpz_class Q0 = half_coords ? 2 : 1;

    mpz_class P = P0, Q = Q0;
    mpz_class Gm2 = -P0, Gm1 = Q0; // numerator recurrence seeds
    mpz_class Bm2 = 1, Bm1 = 0;    // denominator recurrence seeds

    mpz_class G, B;
    for (int i = 0; i < 100000; ++i) {
        mpz_class a = (P + sqrtD) / Q; // exact floor: all quantities stay positive
        G = a * Gm1 + Gm2;
        B = a * Bm1 + Bm2;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (Q == Q0) {
            // End of first period: (G, B) is the fundamental solution.
            mpz_class residue = G * G - D * B * B;
            mpz_class bound = Q0 * Q0;
            if (residue != bound && residue != -bound)
                throw std::logic_error("fundamental_unit: period ended off the unit norm");
            mpq_class a_part(G), b_part(B);
            if (half_coords) {
                a_part /= 2;
                b_part /= 2;
            }
            return QuadraticSurd(a_part, b_part, d);
        }
        Gm2 = Gm1;
        Gm1 = G;
        Bm2 = Bm1;
        Bm1 = B;
    }
    throw std::logic_error("fundamental_unit: period not found (d = " + std::to_string(d) + ")");
}

} // namespace rampi
