#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"
#include "rampi/surd.hpp"

namespace rampi {

/**
 * Exact element a + b*sqrt(d) of a real quadratic field, with rational a, b
 * and a fixed square-free radicand d > 1.  Arithmetic between values over
 * different radicands is rejected rather than coerced.
 */
class QuadraticSurd {
public:
    QuadraticSurd(mpq_class a, mpq_class b, unsigned long d)
        : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d < 2 || !is_squarefree(d))
            throw std::domain_error("QuadraticSurd: radicand must be square-free and > 1");
        a_.canonicalize();
        b_.canonicalize();
    }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    unsigned long d() const { return d_; }

    QuadraticSurd conjugate() const { return QuadraticSurd(a_, -b_, d_); }
    /** Field norm a^2 - d*b^2 (rational; +-1 exactly for units). */
    mpq_class norm() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }

    friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
        x.require_same_field(y);
        return QuadraticSurd(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    }
    friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
        x.require_same_field(y);
        return QuadraticSurd(x.a_ - y.a_, x.b_ - y.b_, x.d_);
    }
    friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
        x.require_same_field(y);
        return QuadraticSurd(x.a_ * y.a_ + mpq_class(x.d_) * x.b_ * y.b_,
                             x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    }
    QuadraticSurd inverse() const {
        mpq_class n = norm();
        if (n == 0) throw std::domain_error("QuadraticSurd: zero has no inverse");
        return QuadraticSurd(a_ / n, -b_ / n, d_);
    }
    QuadraticSurd pow(unsigned long e) const {
        QuadraticSurd r(1, 0, d_), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadraticSurd& x, const QuadraticSurd& y) { return !(x == y); }

    Real eval(const PrecisionContext& ctx) const {
        mpfr_prec_t prec = ctx.bits();
        return Real(a_, prec) + Real(b_, prec) * rootn(Real(static_cast<long>(d_), prec), 2);
    }

    SurdExpr to_surd() const {
        return SurdExpr::constant(a_) +
               SurdExpr::constant(b_) * SurdExpr::sqrt(SurdExpr::integer(static_cast<long>(d_)));
    }

    std::string str() const {
        std::string s = a_.get_str();
        if (b_ == 0) return s;
        if (b_ > 0) s += "+";
        if (b_ == 1)
            ;
        else if (b_ == -1)
            s += "-";
        else
            s += b_.get_str() + "*";
        return s + "sqrt(" + std::to_string(d_) + ")";
    }

private:
    void require_same_field(const QuadraticSurd& other) const {
        if (d_ != other.d_)
            throw std::invalid_argument("QuadraticSurd: mixed radicands " + std::to_string(d_) +
                                        " and " + std::to_string(other.d_));
    }

    mpq_class a_, b_;
    unsigned long d_;
};

} // namespace rampi
