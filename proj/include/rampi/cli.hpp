#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rampi/pi_compute.hpp"
#include "rampi/series.hpp"
#include "rampi/tables.hpp"
#include "rampi/verify.hpp"

namespace rampi {
namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline int do_compute(const std::string& method, long digits, const std::string& out_path,
                      const std::string& format, std::ostream& out, std::ostream& err) {
    if (digits < 1) {
        err << "error: --digits must be >= 1\n";
        return 2;
    }
    if (digits > kMaxDigits) {
        err << "error: --digits exceeds the build-time cap of " << kMaxDigits << "\n";
        return 2;
    }
    if (method != "agm") {
        try {
            find_series(method);
        } catch (const std::out_of_range&) {
            err << "error: unknown method '" << method << "'; run 'pi catalog' for the list\n";
            return 2;
        }
    }

    auto t0 = std::chrono::steady_clock::now();
    DigitResult r;
    try {
        r = checked_pi_digits(method, digits);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    double secs = seconds_since(t0);

    std::string payload;
    if (format == "json") {
        nlohmann::json j{{"method", method},
                         {"digits", digits},
                         {"terms", r.terms},
                         {"seconds", secs},
                         {"value", "3." + r.fraction}};
        payload = j.dump(2) + "\n";
    } else {
        payload = wrap_pi_digits(r.fraction);
    }

    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open '" << out_path << "' for writing\n";
            return 2;
        }
        f << payload;
        return f.good() ? 0 : 2;
    }
    out << payload;
    return 0;
}

inline int do_verify(long digits, const std::string& format, const std::string& table_path,
                     std::ostream& out, std::ostream& err) {
    if (digits < 30) {
        err << "error: precision too low for the table suite (need --digits >= 30)\n";
        return 2;
    }
    SingularTable loaded;
    const SingularTable* table = &SingularTable::builtin();
    if (!table_path.empty()) {
        try {
            loaded = SingularTable::from_file(table_path);
        } catch (const std::exception& e) {
            err << "error: cannot load table '" << table_path << "': " << e.what() << "\n";
            return 2;
        }
        table = &loaded;
    }

    std::vector<CheckResult> checks = run_verification(digits, *table);
    bool all = std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.pass; });

    if (format == "json") {
        nlohmann::json jc = nlohmann::json::array();
        for (const auto& c : checks)
            jc.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"defect", c.defect},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
        out << nlohmann::json{{"digits", digits}, {"pass", all}, {"checks", jc}}.dump(2)
            << "\n";
    } else {
        for (const auto& c : checks) {
            out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(26) << c.name
                << "  max defect " << std::setw(10) << c.defect << "  (tol " << c.tolerance
                << ")";
            if (!c.detail.empty()) out << "  [" << c.detail << "]";
            out << "\n";
        }
        if (all) {
            out << "all " << checks.size() << " checks passed at " << digits << " digits\n";
        } else {
            out << "FAILED:";
            for (const auto& c : checks)
                if (!c.pass) out << " " << c.name;
            out << "\n";
        }
    }
    return all ? 0 : 1;
}

inline int do_catalog(const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : catalog())
            rows.push_back({{"key", s.key},
                            {"target", target_name(s.target)},
                            {"kind", kind_name(s.kind)},
                            {"family", family_name(s.family)},
                            {"pattern", pattern_name(s.pattern)},
                            {"multiplier", s.multiplier.str()},
                            {"A", s.A.str()},
                            {"B", s.B.str()},
                            {"base", s.base.str()},
                            {"alternating", s.alternating},
                            {"digits_per_term", digits_per_term(s)},
                            {"provenance", s.provenance}});
        out << rows.dump(2) << "\n";
        return 0;
    }
    for (const auto& s : catalog()) {
        out << s.key << "\n"
            << "    target " << target_name(s.target) << ", family " << family_name(s.family)
            << ", pattern " << pattern_name(s.pattern)
            << (s.alternating ? ", alternating" : "") << "\n"
            << "    multiplier " << s.multiplier.str() << ", A " << s.A.str() << ", B "
            << s.B.str() << ", base " << s.base.str() << "\n"
            << "    " << std::fixed << std::setprecision(2) << digits_per_term(s)
            << std::defaultfloat << " digits/term; " << s.provenance << "\n";
    }
    return 0;
}

struct BenchRow {
    std::string method;
    double digits_per_term = 0; // -1 marks the AGM (not a series)
    unsigned long terms = 0;
    double achieved = 0;
    double seconds = 0;
};

// Elementary series in plain double arithmetic, capped at 10^7 terms: their
// 1/n error never beats ~8 digits, so double precision is already generous.
inline BenchRow bench_elementary(const SeriesSpec& spec, unsigned long cap = 10'000'000) {
    BenchRow row{spec.key, 0.0, cap, 0.0, 0.0};
    auto t0 = std::chrono::steady_clock::now();
    const double pi = 3.14159265358979323846;
    double v = 0;
    if (spec.kind == SeriesKind::gregory) {
        double s = 0;
        for (unsigned long n = cap; n-- > 0;) {
            double t = 1.0 / (2.0 * static_cast<double>(n) + 1.0);
            s += (n % 2 == 0) ? t : -t;
        }
        v = 4 * s;
    } else if (spec.kind == SeriesKind::euler_zeta2) {
        double s = 0;
        for (unsigned long n = cap; n >= 1; --n) {
            double d = static_cast<double>(n);
            s += 1.0 / (d * d);
        }
        v = std::sqrt(6 * s);
    } else {
        double cf = 2;
        for (unsigned long m = cap; m >= 1; --m) {
            double odd = 2.0 * static_cast<double>(m) + 1.0;
            cf = 2 + odd * odd / cf;
        }
        v = 4 / (1 + 1 / cf);
    }
    row.seconds = seconds_since(t0);
    double diff = std::fabs(v - pi);
    row.achieved = diff > 0 ? std::max(0.0, -std::log10(diff)) : 16.0;
    return row;
}

inline int do_bench(long digits, const std::string& format, std::ostream& out,
                    std::ostream& err) {
    if (digits < 1 || digits > kMaxDigits) {
        err << "error: --digits must lie in [1, " << kMaxDigits << "]\n";
        return 2;
    }
    PrecisionContext ctx(std::max<long>(digits, 16));
    PrecisionContext ref_ctx(std::max<long>(digits, 16) + 10);
    Real ref = agm_pi(ref_ctx);

    auto achieved_digits = [&](const Real& v) {
        Real diff = abs(v - ref);
        if (diff.is_zero()) return static_cast<double>(digits) + 10;
        return std::max(0.0, -log10_magnitude(diff));
    };

    std::vector<BenchRow> rows;
    for (const auto& s : catalog()) {
        if (s.kind == SeriesKind::hypergeometric) {
            BenchRow row{s.key, digits_per_term(s), 0, 0, 0};
            auto t0 = std::chrono::steady_clock::now();
            PiComputation pc = compute_pi(s.key, ctx);
            row.seconds = seconds_since(t0);
            row.terms = pc.terms;
            row.achieved = achieved_digits(pc.value);
            rows.push_back(row);
        } else {
            rows.push_back(bench_elementary(s));
        }
    }
    {
        BenchRow row{"agm", -1, 0, 0, 0};
        auto t0 = std::chrono::steady_clock::now();
        PiComputation pc = compute_pi("agm", ctx);
        row.seconds = seconds_since(t0);
        row.terms = pc.terms;
        row.achieved = achieved_digits(pc.value);
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.digits_per_term > b.digits_per_term;
    });

    if (format == "json") {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json j{{"method", r.method},
                             {"terms", r.terms},
                             {"achieved_digits", r.achieved},
                             {"seconds", r.seconds}};
            if (r.digits_per_term >= 0)
                j["digits_per_term"] = r.digits_per_term;
            else
                j["digits_per_term"] = nullptr;
            jr.push_back(j);
        }
        out << nlohmann::json{{"digits", digits}, {"rows", jr}}.dump(2) << "\n";
        return 0;
    }

    out << std::left << std::setw(16) << "method" << std::right << std::setw(12)
        << "digits/term" << std::setw(12) << "terms" << std::setw(10) << "digits"
        << std::setw(12) << "seconds" << "\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(16) << r.method << std::right << std::fixed
            << std::setw(12);
        if (r.digits_per_term >= 0)
            out << std::setprecision(2) << r.digits_per_term;
        else
            out << "-";
        out << std::setw(12) << r.terms << std::setw(10) << std::setprecision(1) << r.achieved
            << std::setw(12) << std::setprecision(3) << r.seconds << std::defaultfloat
            << "\n";
    }
    return 0;
}

} // namespace detail

/**
 * The full command-line interface: `pi compute|verify|catalog|bench`.
 * Arguments arrive without the program name; all output goes to the given
 * streams.  Returns the process exit code: 0 success, 1 verification
 * failure, 2 usage or domain error.
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"arbitrary-precision pi via modular series, binary splitting and the AGM"};
    app.name("pi");
    app.require_subcommand(1);

    std::string cp_method = "chudnovsky", cp_out, cp_format = "plain";
    long cp_digits = 100;
    CLI::App* compute = app.add_subcommand("compute", "pi digits by one catalog method or the AGM");
    compute->add_option("--method", cp_method, "series key from 'pi catalog', or 'agm'")
        ->capture_default_str();
    compute->add_option("--digits", cp_digits, "decimal digits after the point")
        ->capture_default_str();
    compute->add_option("--out", cp_out, "write the digits to this file instead of stdout");
    compute->add_option("--format", cp_format, "plain|json")
        ->check(CLI::IsMember({"plain", "json"}));

    long vf_digits = 100;
    std::string vf_format = "plain", vf_table;
    CLI::App* verify = app.add_subcommand("verify", "run the identity and table self-checks");
    verify->add_option("--digits", vf_digits, "working precision for the checks")
        ->capture_default_str();
    verify->add_option("--format", vf_format, "plain|json")
        ->check(CLI::IsMember({"plain", "json"}));
    verify->add_option("--table", vf_table, "external singular-value table (JSON)")
        ->check(CLI::ExistingFile);

    std::string cat_format = "plain";
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list every series in the catalog");
    catalog_cmd->add_option("--format", cat_format, "plain|json")
        ->check(CLI::IsMember({"plain", "json"}));

    long bn_digits = 1000;
    std::string bn_format = "plain";
    CLI::App* bench = app.add_subcommand("bench", "terms, accuracy and wall time per method");
    bench->add_option("--digits", bn_digits, "digit target for the timing runs")
        ->capture_default_str();
    bench->add_option("--format", bn_format, "plain|json")
        ->check(CLI::IsMember({"plain", "json"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*compute) return detail::do_compute(cp_method, cp_digits, cp_out, cp_format, out, err);
        if (*verify) return detail::do_verify(vf_digits, vf_format, vf_table, out, err);
        if (*catalog_cmd) return detail::do_catalog(cat_format, out);
        return detail::do_bench(bn_digits, bn_format, out, err);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace rampi
