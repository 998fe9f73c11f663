#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"

namespace rampi {

/**
 * Immutable expression tree for exact surd values: rationals combined by
 * sums, products and rational powers (sqrt(x) is x^(1/2)).  This is the
 * exchange format for singular-value table entries and series catalog
 * fields; see parse() for the text grammar.
 *
 * Evaluation is numeric (at a caller-supplied precision); no symbolic
 * simplification beyond folding of rational subtrees is attempted.
 */
class SurdExpr {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    enum class Kind { constant, sum, product, power };
    struct Node {
        Kind kind;
        mpq_class value;           // constant
        std::vector<NodePtr> kids; // sum / product
        NodePtr base;              // power
        mpq_class exponent;        // power
    };

public:
    static SurdExpr constant(const mpq_class& q) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::constant;
        n->value = q;
        n->value.canonicalize();
        return SurdExpr(std::move(n));
    }
    static SurdExpr integer(long v) { return constant(mpq_class(v)); }

    friend SurdExpr operator+(const SurdExpr& a, const SurdExpr& b) {
        return nary(Kind::sum, a, b);
    }
    friend SurdExpr operator*(const SurdExpr& a, const SurdExpr& b) {
        return nary(Kind::product, a, b);
    }
    friend SurdExpr operator-(const SurdExpr& a, const SurdExpr& b) {
        return a + integer(-1) * b;
    }
    friend SurdExpr operator/(const SurdExpr& a, const SurdExpr& b) {
        return a * b.pow(mpq_class(-1));
    }
    friend SurdExpr operator-(const SurdExpr& a) { return integer(-1) * a; }

    SurdExpr pow(const mpq_class& e) const {
        auto n = std::make_shared<Node>();
        n->kind = Kind::power;
        n->base = n_;
        n->exponent = e;
        n->exponent.canonicalize();
        return SurdExpr(std::move(n));
    }
    static SurdExpr sqrt(const SurdExpr& x) { return x.pow(mpq_class(1, 2)); }

    /** Numeric value at the context's working precision. */
    Real eval(const PrecisionContext& ctx) const { return eval_node(*n_, ctx.bits()); }

    /** Exact rational value if the tree folds to one (no surviving radicals). */
    std::optional<mpq_class> as_rational() const { return rational_node(*n_); }

    /** Parseable text form; parse(str()) reproduces the value. */
    std::string str() const { return print_node(*n_, 0); }

    /**
     * Parses the grammar
     *   expr   := ['-'] term (('+'|'-') term)*
     *   term   := factor (('*'|'/') factor)*
     *   factor := atom ['^' exponent]
     *   atom   := integer | 'sqrt' '(' expr ')' | '(' expr ')'
     *   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
     * Whitespace is insignificant.  Throws std::invalid_argument with the
     * offending position on malformed input.
     */
    static SurdExpr parse(std::string_view text) {
        Parser p{text, 0};
        SurdExpr e = p.expr();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("SurdExpr::parse: trailing input at position " +
                                        std::to_string(p.pos) + " in \"" + std::string(text) + "\"");
        return e;
    }

private:
    explicit SurdExpr(NodePtr n) : n_(std::move(n)) {}

    static SurdExpr nary(Kind kind, const SurdExpr& a, const SurdExpr& b) {
        // Fold constant-with-constant eagerly; keeps printed forms tidy.
        if (a.n_->kind == Kind::constant && b.n_->kind == Kind::constant)
            return constant(kind == Kind::sum ? mpq_class(a.n_->value + b.n_->value)
                                              : mpq_class(a.n_->value * b.n_->value));
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->kids = {a.n_, b.n_};
        return SurdExpr(std::move(n));
    }

    static Real eval_node(const Node& n, mpfr_prec_t prec) {
        switch (n.kind) {
        case Kind::constant:
            return Real(n.value, prec);
        case Kind::sum: {
            Real s(0, prec);
            for (const auto& k : n.kids) s += eval_node(*k, prec);
            return s;
        }
        case Kind::product: {
            Real p(1, prec);
            for (const auto& k : n.kids) p *= eval_node(*k, prec);
            return p;
        }
        case Kind::power: {
            Real b = eval_node(*n.base, prec);
            const mpz_class& num = n.exponent.get_num();
            const mpz_class& den = n.exponent.get_den();
            if (!num.fits_slong_p() || !den.fits_ulong_p())
                throw std::domain_error("SurdExpr: exponent out of range");
            long p_int = num.get_si();
            unsigned long q_int = den.get_ui();
            if (q_int == 1) {
                if (b.is_zero() && p_int < 0)
                    throw std::domain_error("SurdExpr: division by zero");
                return pow_si(b, p_int);
            }
            if (b.sign() < 0)
                throw std::domain_error("SurdExpr: negative radicand under exponent " +
                                        n.exponent.get_str());
            if (b.is_zero() && p_int < 0)
                throw std::domain_error("SurdExpr: division by zero");
            return pow_si(rootn(b, q_int), p_int);
        }
        }
        throw std::logic_error("SurdExpr: corrupt node");
    }

    static std::optional<mpq_class> rational_node(const Node& n) {
        switch (n.kind) {
        case Kind::constant:
            return n.value;
        case Kind::sum: {
            mpq_class s(0);
            for (const auto& k : n.kids) {
                auto v = rational_node(*k);
                if (!v) return std::nullopt;
                s += *v;
            }
            return s;
        }
        case Kind::product: {
            mpq_class p(1);
            for (const auto& k : n.kids) {
                auto v = rational_node(*k);
                if (!v) return std::nullopt;
                p *= *v;
            }
            return p;
        }
        case Kind::power: {
            auto v = rational_node(*n.base);
            if (!v) return std::nullopt;
            const mpz_class& num = n.exponent.get_num();
            const mpz_class& den = n.exponent.get_den();
            if (!num.fits_slong_p() || !den.fits_ulong_p()) return std::nullopt;
            long p_int = num.get_si();
            unsigned long q_int = den.get_ui();
            mpq_class base = *v;
            if (q_int > 1) {
                // Exact q-th root or bail out.
                if (base < 0) return std::nullopt;
                mpz_class rn, rd;
                if (!mpz_root(rn.get_mpz_t(), base.get_num().get_mpz_t(), q_int)) return std::nullopt;
                if (!mpz_root(rd.get_mpz_t(), base.get_den().get_mpz_t(), q_int)) return std::nullopt;
                base = mpq_class(rn) / mpq_class(rd);
            }
            if (base == 0 && p_int < 0) return std::nullopt;
            return pow_q(base, p_int);
        }
        }
        return std::nullopt;
    }

    // Precedence levels: 0 sum, 1 product, 2 power operand.
    static std::string print_node(const Node& n, int parent_level) {
        switch (n.kind) {
        case Kind::constant: {
            std::string s = n.value.get_str();
            bool needs_paren = (s.find('/') != std::string::npos && parent_level >= 2) ||
                               (n.value < 0 && parent_level >= 1);
            return needs_paren ? "(" + s + ")" : s;
        }
        case Kind::sum: {
            std::string s;
            bool first = true;
            for (const auto& k : n.kids) {
                std::string part = print_node(*k, 1);
                if (!first && !part.empty() && part[0] != '-') s += "+";
                s += part;
                first = false;
            }
            return parent_level >= 1 ? "(" + s + ")" : s;
        }
        case Kind::product: {
            std::string s;
            bool first = true;
            for (const auto& k : n.kids) {
                if (k->kind == Kind::power && k->exponent < 0 && !first) {
                    // Render x * y^-e as x / y^e.
                    mpq_class flipped = -k->exponent;
                    Node inv{Kind::power, {}, {}, k->base, flipped};
                    s += "/" + print_node(inv, 2);
                    continue;
                }
                if (!first) s += "*";
                s += print_node(*k, 2);
                first = false;
            }
            return parent_level >= 2 ? "(" + s + ")" : s;
        }
        case Kind::power: {
            if (n.exponent == 1) return print_node(*n.base, parent_level);
            if (n.exponent == mpq_class(1, 2)) return "sqrt(" + print_node(*n.base, 0) + ")";
            std::string b = print_node(*n.base, 2);
            if (n.base->kind == Kind::power) b = "(" + b + ")";
            if (n.exponent.get_den() == 1) return b + "^" + n.exponent.get_str();
            return b + "^(" + n.exponent.get_str() + ")";
        }
        }
        throw std::logic_error("SurdExpr: corrupt node");
    }

    struct Parser {
        std::string_view s;
        size_t pos;

        [[noreturn]] void fail(const std::string& what) const {
            throw std::invalid_argument("SurdExpr::parse: " + what + " at position " +
                                        std::to_string(pos) + " in \"" + std::string(s) + "\"");
        }
        void skip_ws() {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        char peek() {
            skip_ws();
            return pos < s.size() ? s[pos] : '\0';
        }

        SurdExpr expr() {
            bool neg = eat('-');
            SurdExpr e = term();
            if (neg) e = integer(-1) * e;
            while (true) {
                if (eat('+'))
                    e = e + term();
                else if (eat('-'))
                    e = e - term();
                else
                    return e;
            }
        }
        SurdExpr term() {
            SurdExpr e = factor();
            while (true) {
                if (eat('*'))
                    e = e * factor();
                else if (eat('/'))
                    e = e / factor();
                else
                    return e;
            }
        }
        SurdExpr factor() {
            SurdExpr a = atom();
            if (eat('^')) return a.pow(exponent());
            return a;
        }
        SurdExpr atom() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            if (s.compare(pos, 5, "sqrt(") == 0) {
                pos += 5;
                SurdExpr inner = expr();
                if (!eat(')')) fail("expected ')'");
                return SurdExpr::sqrt(inner);
            }
            if (eat('(')) {
                SurdExpr inner = expr();
                if (!eat(')')) fail("expected ')'");
                return inner;
            }
            if (eat('-')) return integer(-1) * atom();
            return constant(mpq_class(read_uint()));
        }
        mpq_class exponent() {
            skip_ws();
            if (eat('(')) {
                bool neg = eat('-');
                mpz_class num = read_uint();
                mpz_class den = 1;
                if (eat('/')) den = read_uint();
                if (!eat(')')) fail("expected ')' in exponent");
                mpq_class e(num, den);
                e.canonicalize();
                return neg ? mpq_class(-e) : e;
            }
            bool neg = eat('-');
            mpq_class e{read_uint()};
            return neg ? mpq_class(-e) : e;
        }
        mpz_class read_uint() {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
            if (pos == start) fail("expected integer");
            return mpz_class(std::string(s.substr(start, pos - start)), 10);
        }
    };

    NodePtr n_;
};

} // namespace rampi
