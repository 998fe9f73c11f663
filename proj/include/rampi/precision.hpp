#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace rampi {

/**
 * Precision request threaded through every numeric routine.
 *
 * `digits` is the number of decimal digits the caller wants to trust in the
 * result; `guard` is the extra decimal headroom used internally so that
 * truncation and rounding noise stays below the requested accuracy.  The
 * default guard of 10 digits is enough for the series/AGM work here; past
 * 10^4 digits it grows logarithmically because error accumulation scales
 * with the number of operations.
 */
struct PrecisionContext {
    long digits;
    long guard;

    explicit PrecisionContext(long digits_, long guard_ = -1)
        : digits(digits_), guard(guard_) {
        if (digits < 16)
            throw std::domain_error("PrecisionContext: digits must be >= 16, got " +
                                    std::to_string(digits));
        if (guard < 0) {
            guard = 10;
            if (digits > 10000)
                guard += static_cast<long>(std::ceil(std::log10(static_cast<double>(digits))));
        }
    }

    long working_decimals() const { return digits + guard; }

    // Binary precision covering digits+guard decimals (plus a little slack for
    // intermediate rounding).  Always >= 3.32 bits per decimal digit.
    mpfr_prec_t bits() const {
        const double log2_10 = 3.321928094887362;
        return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(working_decimals()) * log2_10)) + 16;
    }
};

} // namespace rampi
