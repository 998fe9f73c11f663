#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "rampi/quadsurd.hpp"
#include "rampi/surd.hpp"

using rampi::PrecisionContext;
using rampi::QuadraticSurd;
using rampi::Real;
using rampi::SurdExpr;

namespace {
const PrecisionContext ctx(50);

Real eval_str(const std::string& text) { return SurdExpr::parse(text).eval(ctx); }
} // namespace

TEST_CASE("surd parsing evaluates elementary expressions") {
    Real tol = Real::pow10(-45, ctx.bits());

    CHECK(abs_less(eval_str("3/4") - Real(mpq_class(3, 4), ctx.bits()), tol));
    CHECK(abs_less(eval_str("sqrt(2)") * eval_str("sqrt(2)") - 2L, tol));
    CHECK(abs_less(eval_str("2^6") - 64L, tol));
    CHECK(abs_less(eval_str("2^-2") - Real(mpq_class(1, 4), ctx.bits()), tol));
    CHECK(abs_less(eval_str("4^(1/2)") - 2L, tol));
    CHECK(abs_less(eval_str("4^(-1/2)") - Real(mpq_class(1, 2), ctx.bits()), tol));
    CHECK(abs_less(pow_si(eval_str("2^(3/2)"), 2) - 8L, tol));
    CHECK(abs_less(eval_str(" ( 1 + 2 ) * 3 ") - 9L, tol));
    CHECK(abs_less(eval_str("-sqrt(2)+sqrt(2)"), tol));
    CHECK(abs_less(eval_str("1-2*3") + 5L, tol));
    CHECK(abs_less(eval_str("(1+sqrt(5))/2") - eval_str("1/2+sqrt(5)/2"), tol));
}

TEST_CASE("surd parsing handles a singular-modulus style expression") {
    // (sqrt(2)-1)^6 * (13*sqrt(58)-99) is a tiny positive number ~ 4 q^(1/2)
    // with q = exp(-pi sqrt(58)).
    Real k = eval_str("(sqrt(2)-1)^6*(13*sqrt(58)-99)");
    REQUIRE(k.sign() > 0);
    Real q = exp(-Real::pi(ctx.bits()) * rootn(Real(58, ctx.bits()), 2));
    Real approx = 4L * rootn(q, 2);
    // Crude asymptotic agreement only: relative error of a few percent.
    CHECK(abs(k / approx - 1L).to_double() < 0.02);
}

TEST_CASE("surd as_rational folds exactly when radicals vanish") {
    auto r = [](const std::string& s) { return SurdExpr::parse(s).as_rational(); };

    REQUIRE(r("3/4"));
    CHECK(*r("3/4") == mpq_class(3, 4));
    REQUIRE(r("sqrt(4)"));
    CHECK(*r("sqrt(4)") == 2);
    REQUIRE(r("8^(1/3)"));
    CHECK(*r("8^(1/3)") == 2);
    REQUIRE(r("(16/81)^(3/4)"));
    CHECK(*r("(16/81)^(3/4)") == mpq_class(8, 27));
    REQUIRE(r("2^-1"));
    CHECK(*r("2^-1") == mpq_class(1, 2));
    REQUIRE(r("-3"));
    CHECK(*r("-3") == -3);
    REQUIRE(r("1+2*5"));
    CHECK(*r("1+2*5") == 11);

    CHECK_FALSE(r("sqrt(2)"));
    CHECK_FALSE(r("sqrt(8)"));
    CHECK_FALSE(r("1+sqrt(5)"));
    CHECK_FALSE(r("1/0"));
}

TEST_CASE("surd printing round-trips through the parser") {
    const std::vector<std::string> cases = {
        "3/4",
        "sqrt(2)-1",
        "(sqrt(2)-1)^6*(13*sqrt(58)-99)",
        "(3-sqrt(7))/(4*sqrt(2))",
        "sqrt(5)^3/2-sqrt(29/4)",
        "(sqrt(2)+1)^(1/3)",
        "2^(3/2)*(1+sqrt(3))^-2",
        "-1/2+sqrt(2)/4",
    };
    for (const auto& text : cases) {
        SurdExpr e = SurdExpr::parse(text);
        SurdExpr back = SurdExpr::parse(e.str());
        INFO(text << "  printed as  " << e.str());
        CHECK(abs_less(e.eval(ctx) - back.eval(ctx), Real::pow10(-45, ctx.bits())));
    }
}

TEST_CASE("surd printing of built trees stays parseable") {
    SurdExpr five_sixteenths = SurdExpr::integer(5) / SurdExpr::integer(16);
    CHECK(five_sixteenths.str() == "5/16");

    SurdExpr u = SurdExpr::integer(99) + SurdExpr::integer(13) * SurdExpr::sqrt(SurdExpr::integer(58));
    SurdExpr back = SurdExpr::parse(u.str());
    CHECK(abs_less(u.eval(ctx) - back.eval(ctx), Real::pow10(-45, ctx.bits())));
}

TEST_CASE("surd evaluation rejects bad operations") {
    CHECK_THROWS_AS(eval_str("sqrt(1-2)"), std::domain_error);
    CHECK_THROWS_AS(eval_str("1/0"), std::domain_error);
    CHECK_THROWS_AS(eval_str("(1-1)^-2"), std::domain_error);
}

TEST_CASE("surd parser rejects malformed input") {
    CHECK_THROWS_AS(SurdExpr::parse("2+"), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse("sqrt(2"), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse("3//4"), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse("1 2"), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse("2^(1/)"), std::invalid_argument);
    CHECK_THROWS_AS(SurdExpr::parse("()"), std::invalid_argument);
}

TEST_CASE("quadratic surd arithmetic is exact") {
    QuadraticSurd u(1, 1, 2); // 1 + sqrt(2)
    CHECK((u * u.conjugate()).a() == -1);
    CHECK((u * u.conjugate()).b() == 0);
    CHECK(u.norm() == -1);

    QuadraticSurd sq = u.pow(2);
    CHECK(sq == QuadraticSurd(3, 2, 2));
    CHECK(u.pow(0) == QuadraticSurd(1, 0, 2));

    QuadraticSurd inv = u.inverse();
    CHECK(inv == QuadraticSurd(-1, 1, 2)); // 1/(1+sqrt 2) = sqrt(2)-1
    CHECK((u * inv) == QuadraticSurd(1, 0, 2));

    QuadraticSurd golden(mpq_class(1, 2), mpq_class(1, 2), 5);
    CHECK(golden.norm() == -1);
    CHECK(golden.pow(2) == golden + QuadraticSurd(1, 0, 5)); // x^2 = x + 1

    CHECK_THROWS_AS(u + golden, std::invalid_argument);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 12), std::domain_error);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 1), std::domain_error);

    Real diff = u.eval(ctx) - (1L + rootn(Real(2, ctx.bits()), 2));
    CHECK(abs_less(diff, Real::pow10(-45, ctx.bits())));

    SurdExpr txt = SurdExpr::parse(u.str());
    CHECK(abs_less(txt.eval(ctx) - u.eval(ctx), Real::pow10(-45, ctx.bits())));
}
