#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rampi/invariants.hpp"
#include "rampi/pell.hpp"
#include "rampi/precision.hpp"
#include "rampi/rational.hpp"
#include "rampi/real.hpp"
#include "rampi/surd.hpp"
#include "rampi/table_data.hpp"

namespace rampi {

/**
 * One row of the singular-value table: the exact modulus k_N, the class
 * invariant stored as 1/G_N^12 (kind 'G') or 1/g_N^12 (kind 'g'), the
 * value alpha(N), and the fundamental units attached to N (and N/2 for
 * even N) when the corresponding square-free kernel exceeds 1.
 */
struct SingularRecord {
    unsigned long N = 0;
    char invariant_kind = 'G';
    SurdExpr k, inv12, alpha;
    std::optional<SurdExpr> unit;
    std::optional<SurdExpr> unit_half;

    SingularRecord()
        : k(SurdExpr::integer(0)), inv12(SurdExpr::integer(0)), alpha(SurdExpr::integer(0)) {}
};

class SingularTable {
public:
    static SingularTable from_json_text(const std::string& text) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(std::string("singular-value table: invalid JSON: ") +
                                     e.what());
        }
        if (!doc.is_object() || doc.value("format", "") != "singular-value-table")
            throw std::runtime_error("singular-value table: missing or wrong \"format\" field");
        if (doc.value("version", 0) != 1)
            throw std::runtime_error("singular-value table: unsupported version");
        if (!doc.contains("records") || !doc["records"].is_array())
            throw std::runtime_error("singular-value table: missing \"records\" array");

        SingularTable table;
        for (const auto& rec : doc["records"]) {
            SingularRecord row;
            try {
                row.N = rec.at("N").get<unsigned long>();
                std::string kind = rec.at("invariant_kind").get<std::string>();
                if (kind != "G" && kind != "g")
                    throw std::runtime_error("invariant_kind must be \"G\" or \"g\"");
                row.invariant_kind = kind[0];
                row.k = SurdExpr::parse(rec.at("k").get<std::string>());
                row.inv12 = SurdExpr::parse(rec.at("inv12").get<std::string>());
                row.alpha = SurdExpr::parse(rec.at("alpha").get<std::string>());
                if (rec.contains("unit"))
                    row.unit = SurdExpr::parse(rec.at("unit").get<std::string>());
                if (rec.contains("unit_half"))
                    row.unit_half = SurdExpr::parse(rec.at("unit_half").get<std::string>());
            } catch (const std::exception& e) {
                throw std::runtime_error("singular-value table: bad record (N = " +
                                         std::to_string(row.N) + "): " + e.what());
            }
            table.records_.push_back(std::move(row));
        }
        if (table.records_.empty())
            throw std::runtime_error("singular-value table: no records");
        return table;
    }

    static SingularTable from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("singular-value table: cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_json_text(buf.str());
    }

    /** The table compiled into the library. */
    static const SingularTable& builtin() {
        static const SingularTable t = from_json_text(detail::kSingularTableJson);
        return t;
    }

    const std::vector<SingularRecord>& records() const { return records_; }

    const SingularRecord& find(unsigned long N) const {
        for (const auto& r : records_)
            if (r.N == N) return r;
        throw std::out_of_range("singular-value table: no record for N = " + std::to_string(N));
    }

private:
    std::vector<SingularRecord> records_;
};

/** Outcome of checking one table row against the theta-series route. */
struct TableRowReport {
    unsigned long N = 0;
    char invariant_kind = 'G';
    Real k_defect, inv12_defect, alpha_defect;
    bool units_ok = true;
    bool pass = false;

    TableRowReport() : k_defect(64), inv12_defect(64), alpha_defect(64) {}
};

/**
 * Recomputes every row of the table from scratch -- k via the nome
 * q = exp(-pi sqrt N) and theta quotients, the invariant from k, alpha via
 * the arithmetic-geometric mean -- and reports the absolute defects against
 * the exact surd entries.  A row passes when every defect is at most
 * 10^(8 - digits) and its unit columns equal the Pell-derived fundamental
 * units exactly as quadratic surds would evaluate.
 */
inline std::vector<TableRowReport> verify_table(const SingularTable& table,
                                                const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.bits();
    Real tol = Real::pow10(-(ctx.digits - 8), prec);
    std::vector<TableRowReport> out;

    for (const auto& row : table.records()) {
        TableRowReport rep;
        rep.N = row.N;
        rep.invariant_kind = row.invariant_kind;

        Modulus m = lambda_star(row.N, ctx);
        Real k = m.k(), kp = m.kprime();

        rep.k_defect = abs(row.k.eval(ctx) - k);

        Real inv12_numeric = row.invariant_kind == 'G' ? 2L * k * kp : 2L * k / (kp * kp);
        rep.inv12_defect = abs(row.inv12.eval(ctx) - inv12_numeric);

        rep.alpha_defect = abs(row.alpha.eval(ctx) - alpha(row.N, ctx));

        rep.units_ok = true;
        Real unit_tol = Real::pow10(-(ctx.digits - 8), prec);
        if (row.unit) {
            unsigned long d = squarefree_kernel(row.N);
            rep.units_ok = d > 1 && abs_less(row.unit->eval(ctx) - fundamental_unit(d).eval(ctx),
                                             unit_tol);
        }
        if (rep.units_ok && row.unit_half) {
            unsigned long d = row.N % 2 == 0 ? squarefree_kernel(row.N / 2) : 0;
            rep.units_ok = d > 1 && abs_less(row.unit_half->eval(ctx) -
                                                 fundamental_unit(d).eval(ctx),
                                             unit_tol);
        }

        rep.pass = rep.units_ok && abs_less(rep.k_defect, tol) &&
                   abs_less(rep.inv12_defect, tol) && abs_less(rep.alpha_defect, tol);
        out.push_back(rep);
    }
    return out;
}

} // namespace rampi
