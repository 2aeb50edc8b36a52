#include "cfsum/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfsum/decompose.hpp"
#include "cfsum/gaps.hpp"
#include "cfsum/oracle.hpp"

#ifndef CFSUM_DATA_DIR
#define CFSUM_DATA_DIR "data"
#endif

namespace cfsum::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_counterexample = 1;
constexpr int exit_usage = 2;

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

Json digits_json(const Digits& digits) {
    Json arr = Json::array();
    for (const auto& d : digits) arr.push_back(d.get_str());
    return arr;
}

std::string digits_text(const Json& arr) {
    std::string out = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += ',';
        out += arr[i].get<std::string>();
    }
    return out + "]";
}

std::string exponent_text(const Json& value) {
    return value.is_null() ? std::string("-inf") : std::to_string(value.get<long>());
}

Json exponent_json(const Rational& r) { return r.is_zero() ? Json(nullptr) : Json(floor_log10(r)); }

// ---- decompose -------------------------------------------------------------

Json decompose_report(const RunConfig& config) {
    const NumberSource src = parse_number_literal(config.number);
    DecompositionResult result;
    Json mode;
    if (config.m || config.n) {
        if (!config.m || !config.n) throw UsageError("--m and --n must be given together");
        result = decompose_mixed(src, *config.m, *config.n, config.max_steps, config.check_invariants);
        mode = {{"variant", "mixed"}, {"m", *config.m}, {"n", *config.n}};
    } else if (config.k) {
        result = decompose_checked(src, *config.k, config.max_steps, config.check_invariants);
        mode = {{"variant", "checked"}, {"k", *config.k}};
    } else {
        DecomposeOptions options;
        options.max_steps = config.max_steps;
        options.check_invariants = config.check_invariants;
        result = decompose(src, options);
        mode = {{"variant", "plain"}};
    }

    Json report;
    report["command"] = "decompose";
    report["x"] = config.number;
    report["source"] = describe(src);
    report["mode"] = mode;
    report["c_digits"] = digits_json(result.c);
    report["b_digits"] = digits_json(result.b);
    report["p_over_q"] = result.c_value().str();
    report["s_over_t"] = result.b_value().str();
    report["termination"] = to_string(result.termination);
    report["steps"] = result.steps;
    if (result.steps > 0) {
        const Rational bound = error_bound(result.state);
        report["error_bound"] = bound.str();
        report["error_bound_exponent"] = floor_log10(bound);
    } else {
        report["error_bound"] = nullptr;
        report["error_bound_exponent"] = nullptr;
    }
    report["achieved_error"] = result.achieved_error.str();
    report["achieved_error_exponent"] = exponent_json(result.achieved_error);
    report["merged_nondecreasing"] = result.merged_nondecreasing;
    report["invariants_checked"] = config.check_invariants;
    Json diagnostics = Json::array();
    for (const auto& d : result.state.step_log) {
        Json row;
        row["index"] = d.index;
        row["c"] = d.c.get_str();
        row["b"] = d.b.get_str();
        row["ck_lower_bound"] = d.ck_lower_bound.str();
        row["bk_lower_bound"] = d.bk_lower_bound.str();
        row["error_bound"] = d.error_bound.str();
        row["error_bound_exponent"] = floor_log10(d.error_bound);
        row["residual"] = d.residual ? Json(d.residual->str()) : Json(nullptr);
        diagnostics.push_back(row);
    }
    report["diagnostics"] = diagnostics;
    return report;
}

void decompose_text(const Json& r, std::ostream& out) {
    out << "x            = " << r["x"].get<std::string>() << "  (" << r["source"].get<std::string>() << ")\n";
    out << "mode         = " << r["mode"]["variant"].get<std::string>();
    if (r["mode"].contains("k")) out << ", k = " << r["mode"]["k"].get<long>();
    if (r["mode"].contains("m")) out << ", m = " << r["mode"]["m"].get<long>() << ", n = " << r["mode"]["n"].get<long>();
    out << "\n";
    out << "c            = " << digits_text(r["c_digits"]) << " = " << r["p_over_q"].get<std::string>() << "\n";
    out << "b            = " << digits_text(r["b_digits"]) << " = " << r["s_over_t"].get<std::string>() << "\n";
    out << "termination  = " << r["termination"].get<std::string>() << "\n";
    out << "steps        = " << r["steps"].get<std::size_t>() << "\n";
    if (!r["error_bound"].is_null()) {
        out << "error_bound  = " << r["error_bound"].get<std::string>() << "  (< 10^"
            << (r["error_bound_exponent"].get<long>() + 1) << ")\n";
    }
    out << "achieved     = " << r["achieved_error"].get<std::string>() << "  (exponent "
        << exponent_text(r["achieved_error_exponent"]) << ")\n";
    out << "merged c1,b1,c2,b2,... non-decreasing: " << (r["merged_nondecreasing"].get<bool>() ? "yes" : "no")
        << "\n";
    out << "invariants   = " << (r["invariants_checked"].get<bool>() ? "checked" : "not checked") << "\n";
    out << "\n n  c_n  b_n  error_bound  log10(error_bound)  residual  ck_lower_bound  bk_lower_bound\n";
    for (const auto& row : r["diagnostics"]) {
        out << " " << row["index"].get<std::size_t>() << "  " << row["c"].get<std::string>() << "  "
            << row["b"].get<std::string>() << "  " << row["error_bound"].get<std::string>() << "  "
            << row["error_bound_exponent"].get<long>() << "  "
            << (row["residual"].is_null() ? std::string("-") : row["residual"].get<std::string>()) << "  "
            << row["ck_lower_bound"].get<std::string>() << "  " << row["bk_lower_bound"].get<std::string>()
            << "\n";
    }
}

// ---- gaps ------------------------------------------------------------------

long require_k(const RunConfig& config) {
    if (!config.k) throw UsageError("--k is required");
    return *config.k;
}

Json gaps_report(const RunConfig& config) {
    const long k = require_k(config);
    if (k < 3) throw UsageError("gaps needs --k >= 3");
    if (config.n_max < 1) throw UsageError("--n-max must be >= 1");
    Json report;
    report["command"] = "gaps";
    report["k"] = k;
    report["separator"] = separator_decimal(k, config.precision);
    report["separator_places"] = config.precision;
    Json rows = Json::array();
    for (std::size_t n = 1; n <= config.n_max; ++n) {
        const GapInterval g = gap(k, n);
        rows.push_back({{"n", n},
                        {"lo", g.lo.str()},
                        {"hi", g.hi.str()},
                        {"lo_decimal", to_decimal(g.lo, config.precision)},
                        {"hi_decimal", to_decimal(g.hi, config.precision)}});
    }
    report["gaps"] = rows;
    const DisjointnessCertificate cert = verify_disjoint(k, config.n_max);
    report["disjoint"] = cert.ok();
    return report;
}

void gaps_text(const Json& r, std::ostream& out) {
    out << "k = " << r["k"].get<long>() << ", 2/S_k = sqrt(k^2+4) - k = " << r["separator"].get<std::string>()
        << "... (" << r["separator_places"].get<std::size_t>() << " places, truncated)\n";
    out << " n  lo  hi  lo_decimal  hi_decimal\n";
    for (const auto& row : r["gaps"]) {
        out << " " << row["n"].get<std::size_t>() << "  " << row["lo"].get<std::string>() << "  "
            << row["hi"].get<std::string>() << "  " << row["lo_decimal"].get<std::string>() << "  "
            << row["hi_decimal"].get<std::string>() << "\n";
    }
    out << "pairwise disjoint and separated: " << (r["disjoint"].get<bool>() ? "yes" : "NO") << "\n";
}

// ---- verify ----------------------------------------------------------------

Json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return Json::array({w->first.str(), w->second.str()});
}

Json verify_report(const RunConfig& config) {
    const long k = require_k(config);
    if (k < 1) throw UsageError("--k must be >= 1");
    if (config.q_max < 1) throw UsageError("--q-max must be >= 1");
    const BoundedSkEnumeration e = enumerate_sk(k, config.q_max, config.threads);

    Json report;
    report["command"] = "verify";
    report["k"] = k;
    report["q_max"] = config.q_max;
    report["elements"] = e.elements.size();
    bool pass = true;

    Json gaps = Json::array();
    for (const std::size_t n : config.gap_indices) {
        if (k < 3) throw UsageError("gap checks need --k >= 3");
        const GapInterval g = gap(k, n);
        const GapCheck check = gap_interior_empty(e, g);
        pass = pass && check.empty;
        gaps.push_back({{"n", n},
                        {"lo", g.lo.str()},
                        {"hi", g.hi.str()},
                        {"interior_empty", check.empty},
                        {"counterexample", witness_json(check.counterexample)},
                        {"lo_witness", witness_json(sumset_contains(e, g.lo))},
                        {"hi_witness", witness_json(sumset_contains(e, g.hi))}});
    }
    report["gaps"] = gaps;

    Json targets = Json::array();
    for (const auto& text : config.targets) {
        const Rational t = Rational::parse(text);
        if (t.sign() < 0 || t > Rational(BigInt(2), BigInt(k))) throw UsageError("target outside [0, 2/k]: " + text);
        targets.push_back({{"target", t.str()}, {"witness", witness_json(sumset_contains(e, t))}});
    }
    report["targets"] = targets;
    report["result"] = pass ? "PASS" : "FAIL";
    return report;
}

void verify_text(const Json& r, std::ostream& out) {
    out << "S(" << r["k"].get<long>() << ") with denominators <= " << r["q_max"].get<long>() << ": "
        << r["elements"].get<std::size_t>() << " elements\n";
    auto witness = [](const Json& w) {
        return w.is_null() ? std::string("no witness at this bound")
                           : w[0].get<std::string>() + " + " + w[1].get<std::string>();
    };
    for (const auto& g : r["gaps"]) {
        out << "G_" << g["n"].get<std::size_t>() << " = (" << g["lo"].get<std::string>() << ", "
            << g["hi"].get<std::string>() << "): interior "
            << (g["interior_empty"].get<bool>() ? "empty" : "HIT by " + witness(g["counterexample"])) << "\n";
        out << "  lo = " << witness(g["lo_witness"]) << "\n";
        out << "  hi = " << witness(g["hi_witness"]) << "\n";
    }
    for (const auto& t : r["targets"]) {
        out << "target " << t["target"].get<std::string>() << ": " << witness(t["witness"]) << "\n";
    }
    out << r["result"].get<std::string>() << "\n";
}

// ---- scan ------------------------------------------------------------------

std::string figure_class(Verdict v) {
    switch (v) {
        case Verdict::GapExcluded: return "Gap";
        case Verdict::Unknown: return "Unknown";
        default: return "Covered";
    }
}

Json scan_report(const RunConfig& config) {
    const long k = require_k(config);
    if (k < 3) throw UsageError("scan needs --k >= 3");
    if (config.grid < 1) throw UsageError("--grid must be >= 1");
    const Rational top(BigInt(2), BigInt(k));
    long covered = 0, gapped = 0, unknown = 0;
    Json points = Json::array();
    // i = 0 .. ceil(2D/k), keeping only i/D <= 2/k
    const long last = (2 * config.grid + k - 1) / k;
    for (long i = 0; i <= last; ++i) {
        const Rational x(BigInt(i), BigInt(config.grid));
        if (x > top) break;
        const PointClassification c = classify(x, k, config.n_max);
        const std::string cls = figure_class(c.verdict);
        (cls == "Covered" ? covered : (cls == "Gap" ? gapped : unknown))++;
        points.push_back({{"x", x.str()},
                          {"decimal", to_decimal(x, 6)},
                          {"verdict", to_string(c.verdict)},
                          {"class", cls},
                          {"n", c.n ? Json(*c.n) : Json(nullptr)}});
    }
    Json report;
    report["command"] = "scan";
    report["k"] = k;
    report["grid"] = config.grid;
    report["counts"] = {{"Covered", covered}, {"Gap", gapped}, {"Unknown", unknown}};
    report["points"] = points;
    return report;
}

void write_columns(const Json& r, std::ostream& out) {
    out << "# x_exact x_decimal class verdict n\n";
    for (const auto& p : r["points"]) {
        out << p["x"].get<std::string>() << " " << p["decimal"].get<std::string>() << " "
            << p["class"].get<std::string>() << " " << p["verdict"].get<std::string>() << " "
            << (p["n"].is_null() ? std::string("-") : std::to_string(p["n"].get<std::size_t>())) << "\n";
    }
}

void scan_text(const Json& r, std::ostream& out) {
    const auto& counts = r["counts"];
    out << "k = " << r["k"].get<long>() << ", grid 1/" << r["grid"].get<long>() << ": Covered "
        << counts["Covered"].get<long>() << ", Gap " << counts["Gap"].get<long>() << ", Unknown "
        << counts["Unknown"].get<long>() << "\n";
}

}  // namespace

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("CFSUM_DATA_DIR"); env && *env) return env;
    return CFSUM_DATA_DIR;
}

NumberSource parse_number_literal(std::string_view text, const std::filesystem::path& data) {
    if (text == "e-2") return StreamSource::e_minus_2();
    if (text == "pi-3") return StreamSource::from_file(data / "pi_minus_3.txt");
    if (starts_with(text, "stream:")) return StreamSource::from_file(std::string(text.substr(7)));
    if (starts_with(text, "surd:")) {
        const auto parts = split(text.substr(5), ',');
        if (parts.size() != 4) throw DomainError("surd literal must be surd:a,b,d,c");
        return SurdSource(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]),
                          parse_integer(parts[3]));
    }
    if (starts_with(text, "[")) return RationalSource(evaluate(parse_digits(text)));
    return RationalSource(Rational::parse(text));
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    RunConfig config;
    CLI::App app{"Exact decompositions x = c + b into continued fractions with large partial quotients"};
    app.require_subcommand(1);

    bool json = false;
    bool no_check = false;
    std::string gaps_list;
    std::string targets_list;

    auto* dec = app.add_subcommand("decompose", "split x into c + b");
    dec->add_option("--x", config.number, "p/q | [a1,...] | surd:a,b,d,c | stream:PATH | e-2 | pi-3")->required();
    dec->add_option("--k", config.k, "require all digits >= k (x in (0, 1/(k-1)])");
    dec->add_option("--m", config.m, "require c digits >= m");
    dec->add_option("--n", config.n, "require b digits >= n");
    dec->add_option("--max-steps", config.max_steps, "maximum number of (c_n, b_n) pairs")->check(CLI::PositiveNumber);
    dec->add_flag("--no-check", no_check, "skip per-step invariant checks");

    auto* gp = app.add_subcommand("gaps", "tabulate the gap intervals G_{k,n}");
    gp->add_option("--k", config.k)->required();
    gp->add_option("--n-max", config.n_max, "number of gaps")->check(CLI::PositiveNumber);
    gp->add_option("--precision", config.precision, "decimal places");

    auto* ver = app.add_subcommand("verify", "check gap and witness claims against S(k) enumeration");
    ver->add_option("--k", config.k)->required();
    ver->add_option("--q-max", config.q_max, "denominator bound")->check(CLI::PositiveNumber);
    ver->add_option("--gaps", gaps_list, "comma-separated gap indices (default 1,2)");
    ver->add_option("--targets", targets_list, "comma-separated rationals to witness");
    ver->add_option("--threads", config.threads, "enumeration threads");

    auto* sc = app.add_subcommand("scan", "classify the grid points i/D of [0, 2/k]");
    sc->add_option("--k", config.k)->required();
    sc->add_option("--grid", config.grid, "grid denominator D")->check(CLI::PositiveNumber);
    sc->add_option("--n-max", config.n_max, "gap scan cap");
    sc->add_option("--columns", config.columns_path, "write plot-ready columns to this file");

    for (auto* sub : {dec, gp, ver, sc}) sub->add_flag("--json", json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (dec->parsed()) config.subcommand = Subcommand::Decompose;
    if (gp->parsed()) config.subcommand = Subcommand::Gaps;
    if (ver->parsed()) config.subcommand = Subcommand::Verify;
    if (sc->parsed()) config.subcommand = Subcommand::Scan;
    config.output = json ? OutputMode::Json : OutputMode::Text;
    config.check_invariants = !no_check;
    if (config.subcommand == Subcommand::Verify) {
        if (!gaps_list.empty()) {
            config.gap_indices.clear();
            for (const auto& item : split(gaps_list, ',')) {
                const BigInt n = parse_integer(item);
                if (n < 1) throw UsageError("gap index must be >= 1");
                config.gap_indices.push_back(n.get_ui());
            }
        }
        if (!targets_list.empty()) config.targets = split(targets_list, ',');
    }
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Json report;
        switch (config.subcommand) {
            case Subcommand::Decompose: report = decompose_report(config); break;
            case Subcommand::Gaps: report = gaps_report(config); break;
            case Subcommand::Verify: report = verify_report(config); break;
            case Subcommand::Scan: report = scan_report(config); break;
        }
        if (config.subcommand == Subcommand::Scan && !config.columns_path.empty()) {
            std::ofstream columns(config.columns_path);
            if (!columns) throw UsageError("cannot write " + config.columns_path);
            write_columns(report, columns);
        }
        if (config.output == OutputMode::Json) {
            out << report.dump(2) << "\n";
        } else {
            switch (config.subcommand) {
                case Subcommand::Decompose: decompose_text(report, out); break;
                case Subcommand::Gaps: gaps_text(report, out); break;
                case Subcommand::Verify: verify_text(report, out); break;
                case Subcommand::Scan:
                    scan_text(report, out);
                    if (config.columns_path.empty()) write_columns(report, out);
                    break;
            }
        }
        if (config.subcommand == Subcommand::Verify && report["result"] != "PASS") return exit_counterexample;
        if (config.subcommand == Subcommand::Gaps && !report["disjoint"].get<bool>()) return exit_counterexample;
        return exit_ok;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return exit_counterexample;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SourceExhausted& e) {
        err << "source exhausted: " << e.what() << "\n";
        return exit_usage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_command_line(argc, argv, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    if (!config) return exit_ok;
    return run(*config, out, err);
}

}  // namespace cfsum::cli
