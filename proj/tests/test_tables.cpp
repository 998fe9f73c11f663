#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "rampi/invariants.hpp"
#include "rampi/pell.hpp"
#include "rampi/tables.hpp"

using rampi::class_invariants;
using rampi::fundamental_unit;
using rampi::lambda_star;
using rampi::PrecisionContext;
using rampi::Real;
using rampi::SingularTable;

namespace {
const std::string kFixtures = RAMPI_FIXTURE_DIR;
}

TEST_CASE("builtin singular-value table loads and indexes") {
    const SingularTable& t = SingularTable::builtin();
    CHECK(t.records().size() == 14);
    CHECK(t.find(58).invariant_kind == 'g');
    CHECK(t.find(7).invariant_kind == 'G');
    CHECK(t.find(58).unit_half.has_value());
    CHECK_FALSE(t.find(9).unit.has_value());
    CHECK_THROWS_AS(t.find(999), std::out_of_range);
}

TEST_CASE("builtin table file and embedded copy agree") {
    SingularTable from_disk = SingularTable::from_file(RAMPI_DATA_FILE);
    const SingularTable& embedded = SingularTable::builtin();
    REQUIRE(from_disk.records().size() == embedded.records().size());
    const PrecisionContext ctx(40);
    Real tol = Real::pow10(-35, ctx.bits());
    for (size_t i = 0; i < from_disk.records().size(); ++i) {
        CHECK(from_disk.records()[i].N == embedded.records()[i].N);
        CHECK(abs_less(from_disk.records()[i].k.eval(ctx) - embedded.records()[i].k.eval(ctx),
                       tol));
    }
}

TEST_CASE("every table row verifies at 100 digits") {
    const PrecisionContext ctx(100);
    auto reports = rampi::verify_table(SingularTable::builtin(), ctx);
    REQUIRE(reports.size() == 14);
    Real tol = Real::pow10(-92, ctx.bits());
    for (const auto& rep : reports) {
        INFO("N = " << rep.N << "  k defect " << rep.k_defect.to_double() << "  inv12 defect "
                    << rep.inv12_defect.to_double() << "  alpha defect "
                    << rep.alpha_defect.to_double());
        CHECK(rep.pass);
        CHECK(abs_less(rep.k_defect, tol));
        CHECK(abs_less(rep.inv12_defect, tol));
        CHECK(abs_less(rep.alpha_defect, tol));
        CHECK(rep.units_ok);
    }
}

TEST_CASE("class invariants hit fundamental units at the classical N") {
    const PrecisionContext ctx(100);
    Real tol = Real::pow10(-90, ctx.bits());

    // G_N^4 = u_N for N = 5, 13, 37.
    for (unsigned long N : {5ul, 13ul, 37ul}) {
        Real G = class_invariants(lambda_star(N, ctx), ctx).G;
        Real u = fundamental_unit(N).eval(ctx);
        INFO("N = " << N);
        CHECK(abs_less(pow_si(G, 4) - u, tol));
    }

    // g_58^2 = u_29.
    Real g = class_invariants(lambda_star(58, ctx), ctx).g;
    CHECK(abs_less(pow_si(g, 2) - fundamental_unit(29).eval(ctx), tol));
}

TEST_CASE("a corrupted table row is flagged by verification") {
    const PrecisionContext ctx(60);
    SingularTable bad = SingularTable::from_file(kFixtures + "/singular_values_corrupt.json");
    auto reports = rampi::verify_table(bad, ctx);
    REQUIRE(reports.size() == 14);
    int failures = 0;
    for (const auto& rep : reports) {
        if (!rep.pass) {
            ++failures;
            CHECK(rep.N == 7);
            CHECK(rep.alpha_defect.to_double() > 1e-3); // off by a visible amount, not noise
        }
    }
    CHECK(failures == 1);
}

TEST_CASE("table loading rejects malformed input") {
    CHECK_THROWS_AS(SingularTable::from_file(kFixtures + "/malformed.json"), std::runtime_error);
    CHECK_THROWS_AS(SingularTable::from_file(kFixtures + "/not_a_table.json"),
                    std::runtime_error);
    CHECK_THROWS_AS(SingularTable::from_file(kFixtures + "/does_not_exist.json"),
                    std::runtime_error);
    CHECK_THROWS_AS(SingularTable::from_json_text("{\"format\": \"singular-value-table\", "
                                                  "\"version\": 1, \"records\": []}"),
                    std::runtime_error);
    CHECK_THROWS_AS(SingularTable::from_json_text(
                        "{\"format\": \"singular-value-table\", \"version\": 1, \"records\": "
                        "[{\"N\": 3, \"invariant_kind\": \"G\", \"k\": \"1 +\", \"inv12\": "
                        "\"1\", \"alpha\": \"1\"}]}"),
                    std::runtime_error);
}
