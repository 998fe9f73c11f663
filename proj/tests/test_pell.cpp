#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rampi/pell.hpp"
#include "rampi/quadsurd.hpp"
#include "rampi/rational.hpp"

using rampi::fundamental_unit;
using rampi::PrecisionContext;
using rampi::QuadraticSurd;
using rampi::Real;

TEST_CASE("fundamental units match the classical table") {
    struct Expected {
        unsigned long d;
        mpq_class a, b;
    };
    const std::vector<Expected> table = {
        {2, 1, 1},
        {3, 2, 1},
        {5, {1, 2}, {1, 2}},
        {6, 5, 2},
        {7, 8, 3},
        {10, 3, 1},
        {11, 10, 3},
        {13, {3, 2}, {1, 2}},
        {15, 4, 1},
        {22, 197, 42},
        {29, {5, 2}, {1, 2}},
        {37, 6, 1},
        {58, 99, 13},
    };
    for (const auto& row : table) {
        QuadraticSurd u = fundamental_unit(row.d);
        INFO("d = " << row.d << ", got " << u.str());
        CHECK(u == QuadraticSurd(row.a, row.b, row.d));
        mpq_class n = u.norm();
        CHECK((n == 1 || n == -1));
    }
}

TEST_CASE("fundamental units are minimal for all square-free d up to 200") {
    // Independent minimality check: the units > 1 form the cyclic group
    // generated by the fundamental one, so u fails to be fundamental exactly
    // when u = w^m for some unit w and m >= 2.  Any such w is recovered from
    // the real m-th root r of u via w = ((r + s/r)/2, (r - s/r)/(2 sqrt d))
    // with s = norm(w) in {+1,-1}; coordinates of units are half-integers,
    // so rounding and an exact power check settle each candidate.
    const PrecisionContext ctx(80);
    const mpfr_prec_t prec = ctx.bits();

    auto round_half_integer = [](const Real& x) {
        mpq_class q((x * 2L).round_to_integer(), 2);
        q.canonicalize();
        return q;
    };

    for (unsigned long d = 2; d <= 200; ++d) {
        if (!rampi::is_squarefree(d)) continue;
        QuadraticSurd u = fundamental_unit(d);
        mpq_class norm_u = u.norm();
        INFO("d = " << d << ", unit " << u.str());
        REQUIRE((norm_u == 1 || norm_u == -1));

        Real val = u.eval(ctx);
        REQUIRE(val > 1L);
        Real sqrt_d = rootn(Real(static_cast<long>(d), prec), 2);

        // Smallest possible unit > 1 in any real quadratic field is the
        // golden ratio, which bounds the exponent m from above.
        int max_m = static_cast<int>(std::floor(std::log(val.to_double()) / std::log(1.61))) + 1;
        for (int m = 2; m <= max_m; ++m) {
            Real r = exp(log(val) / static_cast<long>(m));
            for (int sign : {1, -1}) {
                Real s_over_r = Real(sign, prec) / r;
                mpq_class ca = round_half_integer((r + s_over_r) / 2L);
                mpq_class cb = round_half_integer((r - s_over_r) / (2L * sqrt_d));
                if (cb <= 0) continue;
                if (d % 4 != 1 && (ca.get_den() != 1 || cb.get_den() != 1)) continue;
                QuadraticSurd cand(ca, cb, d);
                mpq_class cn = cand.norm();
                if (cn != 1 && cn != -1) continue;
                INFO("candidate root " << cand.str() << " with exponent " << m);
                CHECK(cand.pow(static_cast<unsigned long>(m)) != u);
            }
        }
    }
}

TEST_CASE("fundamental unit rejects non-square-free input") {
    CHECK_THROWS_AS(fundamental_unit(1), std::domain_error);
    CHECK_THROWS_AS(fundamental_unit(4), std::domain_error);
    CHECK_THROWS_AS(fundamental_unit(8), std::domain_error);
    CHECK_THROWS_AS(fundamental_unit(12), std::domain_error);
    CHECK_THROWS_AS(fundamental_unit(0), std::domain_error);
}

TEST_CASE("fundamental units solve the scaled Pell equation") {
    // For every d the doubled coordinates give an integer solution of
    // x^2 - d y^2 = +-4, and for d != 1 mod 4 the unit itself solves
    // x^2 - d y^2 = +-1 in integers.
    for (unsigned long d : {2ul, 3ul, 6ul, 7ul, 10ul, 11ul, 15ul, 22ul, 58ul}) {
        QuadraticSurd u = fundamental_unit(d);
        CHECK(u.a().get_den() == 1);
        CHECK(u.b().get_den() == 1);
    }
    for (unsigned long d : {5ul, 13ul, 29ul, 37ul, 61ul}) {
        QuadraticSurd u = fundamental_unit(d);
        mpq_class x = u.a() * 2, y = u.b() * 2;
        CHECK(x.get_den() == 1);
        CHECK(y.get_den() == 1);
        mpq_class res = x * x - mpq_class(d) * y * y;
        CHECK((res == 4 || res == -4));
    }
    // The classical long-period case d = 61.
    QuadraticSurd u61 = fundamental_unit(61);
    CHECK(u61 == QuadraticSurd(mpq_class(39, 2), mpq_class(5, 2), 61));
}
