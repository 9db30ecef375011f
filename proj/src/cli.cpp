#include "adaptalpha/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "adaptalpha/adaptive_alpha.hpp"
#include "adaptalpha/errors.hpp"
#include "adaptalpha/fetch.hpp"
#include "adaptalpha/linear_model.hpp"
#include "adaptalpha/nested_test.hpp"
#include "adaptalpha/report_json.hpp"
#include "adaptalpha/simulation.hpp"

namespace adaptalpha {

namespace {

// argv combinations the parser grammar cannot express; mapped to exit 1
struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct CommonOpts {
    std::string strategy = "simple";
    double alpha0 = 0.05;
    int anchor_n = 0;
    double anchor_log_b = 0.0;
    bool has_anchor_log_b = false;
    std::vector<double> pbic_xi, pbic_d, pbic_neff;
    std::string format = "text";
    std::string out_path;
    std::uint64_t seed = 0;
    int workers = 1;
};

void add_strategy_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--strategy", opts.strategy, "simple|minimal|anchored|pbic")
        ->check(CLI::IsMember({"simple", "minimal", "anchored", "pbic"}));
    cmd->add_option("--alpha0", opts.alpha0, "base significance level (default 0.05)");
    cmd->add_option("--anchor-n", opts.anchor_n,
                    "anchored: reference size (replicates r0 for anova-alpha, rows n0 "
                    "otherwise)");
    cmd->add_option("--anchor-logb", opts.anchor_log_b,
                    "anchored: reference log b (defaults to the evaluated design's)")
        ->each([&opts](const std::string&) { opts.has_anchor_log_b = true; });
    cmd->add_option("--pbic-xi", opts.pbic_xi,
                    "pbic: squared effect estimate per entering parameter")
        ->delimiter(',');
    cmd->add_option("--pbic-d", opts.pbic_d, "pbic: scale d per entering parameter")
        ->delimiter(',');
    cmd->add_option("--pbic-neff", opts.pbic_neff,
                    "pbic: effective sample size per entering parameter")
        ->delimiter(',');
}

void add_output_options(CLI::App* cmd, CommonOpts& opts,
                        const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", opts.out_path, "write the report to this path");
}

CalibrationStrategy build_strategy(const CommonOpts& opts) {
    CalibrationStrategy strategy;
    strategy.alpha0 = opts.alpha0;
    if (opts.strategy == "simple") {
        strategy.kind = StrategyKind::simple;
    } else if (opts.strategy == "minimal") {
        strategy.kind = StrategyKind::minimal_balanced;
    } else if (opts.strategy == "anchored") {
        strategy.kind = StrategyKind::anchored;
        if (opts.anchor_n <= 0)
            throw usage_failure("--strategy anchored requires --anchor-n");
        strategy.anchor_n = opts.anchor_n;
        if (opts.has_anchor_log_b) strategy.anchor_log_b = opts.anchor_log_b;
    } else if (opts.strategy == "pbic") {
        strategy.kind = StrategyKind::pbic;
        if (opts.pbic_xi.empty() || opts.pbic_xi.size() != opts.pbic_d.size() ||
            opts.pbic_xi.size() != opts.pbic_neff.size())
            throw usage_failure("--strategy pbic requires --pbic-xi, --pbic-d and "
                                "--pbic-neff of equal length");
        PBICInputs inputs;
        for (size_t t = 0; t < opts.pbic_xi.size(); ++t)
            inputs.alt_terms.push_back({opts.pbic_xi[t], opts.pbic_d[t], opts.pbic_neff[t]});
        strategy.pbic = std::move(inputs);
    }
    return strategy;
}

void emit(const CommonOpts& opts, std::ostream& out, const std::string& text) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file)
        throw error("io", "cannot write to '" + opts.out_path + "'");
    file << text;
}

std::string alpha_text(const AlphaResult& r) {
    std::ostringstream os;
    os << "alpha_adaptive " << fmt4(r.alpha_adaptive) << "\n"
       << "  strategy=" << r.strategy << " g=" << fmt4(r.g) << " log_b=" << fmt4(r.log_b)
       << " C=" << fmt4(r.c_prior) << " C_alpha=" << fmt4(r.c_alpha)
       << " adaptive_quantile=" << fmt4(r.adaptive_quantile) << " n=" << r.n
       << " j=" << r.j << " q=" << r.q << "\n";
    return os.str();
}

std::string report_text(const RegressionTestResult& result) {
    const TestReport& r = result.report;
    std::ostringstream os;
    os << "T " << fmt4(r.statistic) << "\n"
       << "p_gamma " << fmt4(r.p_gamma) << "\n"
       << "p_exact " << fmt4(r.p_exact) << "\n"
       << "alpha_adaptive " << fmt4(r.alpha_adaptive) << " (strategy="
       << r.diagnostics.strategy << ", C=" << fmt4(r.diagnostics.c_prior)
       << ", C_alpha=" << fmt4(r.diagnostics.c_alpha) << ", g=" << fmt4(r.diagnostics.g)
       << ")\n"
       << "classical_alpha " << fmt4(r.classical_alpha) << "\n"
       << "reject_classical " << (r.reject_classical ? "true" : "false") << "\n"
       << "reject_adaptive " << (r.reject_adaptive ? "true" : "false") << "\n"
       << "b " << fmt4(result.diagnostics.b) << " (log_b direct "
       << fmt4(result.diagnostics.log_b_direct) << ", correlation route "
       << fmt4(result.diagnostics.log_b_correlation) << ")\n";
    for (size_t c = 0; c < result.diagnostics.entering.size(); ++c) {
        os << "var(" << result.diagnostics.entering[c] << ") "
           << fmt4(result.diagnostics.entering_variances[static_cast<int>(c)]) << "\n";
        for (size_t a = 0; a < result.diagnostics.retained.size(); ++a)
            os << "cor(" << result.diagnostics.retained[a] << ","
               << result.diagnostics.entering[c] << ") "
               << fmt4(result.diagnostics.cross_correlations(static_cast<int>(a),
                                                             static_cast<int>(c)))
               << "\n";
    }
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"adaptive Type-I-error thresholds for nested linear-model tests"};
    app.require_subcommand(1);

    // ---- alpha / anova-alpha -------------------------------------------
    CommonOpts alpha_opts;
    int k = 0, r = 0, n1 = 0, n2 = 0, n = 0, j = 0, q = 0;
    double log_b = 0.0;
    bool use_anova = false, use_two_means = false, use_findley = false;
    auto* alpha_cmd = app.add_subcommand(
        "alpha", "adaptive alpha for a design (closed-form families or raw log b)");
    alpha_cmd->add_flag("--anova", use_anova, "balanced one-way layout (-k, -r)");
    alpha_cmd->add_flag("--two-means", use_two_means, "two-group comparison (--n1, --n2)");
    alpha_cmd->add_flag("--findley", use_findley, "harmonic regressor vs empty model (-n)");
    alpha_cmd->add_option("-k,--k", k, "groups");
    alpha_cmd->add_option("-r,--r", r, "replicates per group");
    alpha_cmd->add_option("--n1", n1, "first group size");
    alpha_cmd->add_option("--n2", n2, "second group size");
    alpha_cmd->add_option("-n,--n", n, "sample size");
    alpha_cmd->add_option("-j,--j", j, "larger-model coefficient count");
    alpha_cmd->add_option("-q,--q", q, "extra parameters");
    alpha_cmd->add_option("--log-b", log_b, "log design determinant ratio");
    add_strategy_options(alpha_cmd, alpha_opts);
    add_output_options(alpha_cmd, alpha_opts, "text");

    CommonOpts anova_opts;
    int anova_k = 0, anova_r = 0;
    auto* anova_cmd =
        app.add_subcommand("anova-alpha", "adaptive alpha for the balanced one-way layout");
    anova_cmd->add_option("-k,--k", anova_k, "groups")->required();
    anova_cmd->add_option("-r,--r", anova_r, "replicates per group")->required();
    add_strategy_options(anova_cmd, anova_opts);
    add_output_options(anova_cmd, anova_opts, "text");

    // ---- bic-alpha ------------------------------------------------------
    CommonOpts bic_opts;
    int bic_n = 0, bic_q = 1, bic_anchor = 0;
    auto* bic_cmd =
        app.add_subcommand("bic-alpha", "sample-size-only adaptive alpha (BIC form)");
    bic_cmd->add_option("-n,--n", bic_n, "sample size")->required();
    bic_cmd->add_option("-q,--q", bic_q, "extra parameters (default 1)");
    bic_cmd->add_option("--alpha0", bic_opts.alpha0, "base significance level");
    bic_cmd->add_option("--anchor-n", bic_anchor, "anchor sample size (optional)");
    add_output_options(bic_cmd, bic_opts, "text");

    // ---- test -----------------------------------------------------------
    CommonOpts test_opts;
    std::string csv_path, url, response;
    std::vector<std::string> null_predictors, alt_predictors;
    auto* test_cmd = app.add_subcommand("test", "nested regression test on a CSV dataset");
    test_cmd->add_option("--csv", csv_path, "dataset path");
    test_cmd->add_option("--fetch-url", url, "fetch the dataset over http instead");
    test_cmd->add_option("--response", response, "response column")->required();
    test_cmd->add_option("--null", null_predictors, "null-model predictors")
        ->delimiter(',');
    test_cmd->add_option("--alt", alt_predictors, "alternative-model predictors")
        ->required()
        ->delimiter(',');
    add_strategy_options(test_cmd, test_opts);
    add_output_options(test_cmd, test_opts, "text");

    // ---- simulate-table3 -------------------------------------------------
    CommonOpts sim_opts;
    std::vector<int> sim_r{10, 50, 100, 500, 1000};
    int sim_k = 1000, sim_outer = 20;
    std::vector<double> window{0.01, 0.05};
    std::string adjust = "none", p_source = "exact";
    auto* sim_cmd = app.add_subcommand(
        "simulate-table3", "false-positive share among marginally significant tests");
    sim_cmd->add_option("-r,--r", sim_r, "per-group sizes")->delimiter(',');
    sim_cmd->add_option("-K,--tests-per-state", sim_k, "tests per hypothesis state");
    sim_cmd->add_option("--outer", sim_outer, "outer replicates (median across them)");
    sim_cmd->add_option("--window", window, "p-value window, two bounds")
        ->expected(2)
        ->delimiter(',');
    sim_cmd->add_option("--adjust", adjust, "none|pbic")
        ->check(CLI::IsMember({"none", "pbic"}));
    sim_cmd->add_option("--p-source", p_source, "exact|gamma")
        ->check(CLI::IsMember({"exact", "gamma"}));
    sim_cmd->add_option("--alpha0", sim_opts.alpha0, "base significance level");
    sim_cmd->add_option("--seed", sim_opts.seed, "RNG seed");
    sim_cmd->add_option("--workers", sim_opts.workers, "worker threads");
    add_output_options(sim_cmd, sim_opts, "csv");

    // ---- tables -----------------------------------------------------------
    CommonOpts tables_opts;
    std::string table_id;
    double tables_xi = 0.0, tables_d = 0.0;
    bool has_xi = false, has_d = false;
    auto* tables_cmd = app.add_subcommand("tables", "emit a reference table as CSV");
    tables_cmd->add_option("--id", table_id, "T1|T2|T5|T6")->required();
    tables_cmd->add_option("--alpha0", tables_opts.alpha0, "base significance level");
    tables_cmd->add_option("--pbic-xi", tables_xi, "squared effect for PBIC columns")
        ->each([&has_xi](const std::string&) { has_xi = true; });
    tables_cmd->add_option("--pbic-d", tables_d, "per-parameter scale for the T2 PBIC column")
        ->each([&has_d](const std::string&) { has_d = true; });
    add_output_options(tables_cmd, tables_opts, "csv");

    // ---- mc-check ----------------------------------------------------------
    CommonOpts mc_opts;
    int mc_n = 100, mc_j = 2, mc_q = 1, mc_draws = 100000;
    auto* mc_cmd = app.add_subcommand(
        "mc-check", "Monte Carlo check of the null laws (KS distances)");
    mc_cmd->add_option("-n,--n", mc_n, "rows");
    mc_cmd->add_option("-j,--j", mc_j, "larger-model coefficients");
    mc_cmd->add_option("-q,--q", mc_q, "extra parameters");
    mc_cmd->add_option("-N,--draws", mc_draws, "number of simulated datasets");
    mc_cmd->add_option("--seed", mc_opts.seed, "RNG seed");
    add_output_options(mc_cmd, mc_opts, "text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (alpha_cmd->parsed()) {
            const CalibrationStrategy strategy = build_strategy(alpha_opts);
            AlphaResult result;
            if (use_anova) {
                result = anova_adaptive_alpha(k, r, strategy);
            } else if (use_two_means) {
                if (n1 < 2 || n2 < 2)
                    throw usage_failure("--two-means requires --n1 and --n2 (>= 2)");
                const double lb = std::log(n1 * static_cast<double>(n2) / (n1 + n2));
                result = nested_adaptive_alpha(lb, n1 + n2, 2, 1, strategy);
            } else if (use_findley) {
                if (n < 2) throw usage_failure("--findley requires -n >= 2");
                result = nested_adaptive_alpha(std::log(harmonic_number(n)), n, 1, 1,
                                               strategy);
            } else {
                if (n <= 0 || j <= 0 || q <= 0)
                    throw usage_failure("raw mode requires --log-b with -n, -j and -q");
                result = nested_adaptive_alpha(log_b, n, j, q, strategy);
            }
            emit(alpha_opts, out,
                 alpha_opts.format == "json" ? to_json(result).dump(2) + "\n"
                                             : alpha_text(result));
        } else if (anova_cmd->parsed()) {
            const AlphaResult result =
                anova_adaptive_alpha(anova_k, anova_r, build_strategy(anova_opts));
            emit(anova_opts, out,
                 anova_opts.format == "json" ? to_json(result).dump(2) + "\n"
                                             : alpha_text(result));
        } else if (bic_cmd->parsed()) {
            std::optional<int> anchor;
            if (bic_anchor > 0) anchor = bic_anchor;
            const AlphaResult result =
                bic_adaptive_alpha(bic_n, bic_q, bic_opts.alpha0, anchor);
            emit(bic_opts, out,
                 bic_opts.format == "json" ? to_json(result).dump(2) + "\n"
                                           : alpha_text(result));
        } else if (test_cmd->parsed()) {
            Dataset dataset;
            if (!csv_path.empty()) {
                dataset = parse_dataset_csv(csv_path);
            } else if (!url.empty()) {
                dataset = parse_dataset_csv_text(http_get(url), url);
            } else {
                throw usage_failure("test requires --csv or --fetch-url");
            }
            const RegressionTestResult result = run_regression_test(
                dataset, response, null_predictors, alt_predictors,
                build_strategy(test_opts));
            emit(test_opts, out,
                 test_opts.format == "json" ? to_json(result).dump(2) + "\n"
                                            : report_text(result));
        } else if (sim_cmd->parsed()) {
            Table3Config cfg;
            cfg.tests_per_state = sim_k;
            cfg.outer_reps = sim_outer;
            cfg.window_low = window[0];
            cfg.window_high = window[1];
            cfg.seed = sim_opts.seed;
            cfg.alpha0 = sim_opts.alpha0;
            cfg.workers = sim_opts.workers;
            cfg.adjustment = adjust == "pbic" ? Table3Config::Adjustment::pbic
                                              : Table3Config::Adjustment::none;
            cfg.p_value = p_source == "gamma" ? Table3Config::PValueKind::gamma
                                              : Table3Config::PValueKind::exact;
            std::ostringstream os;
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            if (sim_opts.format != "json")
                os << "r,pct_from_null,mc_stderr,counted_null,counted_alt,low_confidence\n";
            for (int rr : sim_r) {
                cfg.r = rr;
                const SimResult sim = table3_experiment(cfg);
                if (sim_opts.format == "json") {
                    rows.push_back({{"r", rr},
                                    {"pct_from_null", sim.pct_from_null},
                                    {"mc_stderr", sim.mc_stderr},
                                    {"counted_null", sim.counted_null},
                                    {"counted_alt", sim.counted_alt},
                                    {"low_confidence", sim.low_confidence}});
                } else {
                    os << rr << ',' << fmt_full(sim.pct_from_null) << ','
                       << fmt_full(sim.mc_stderr) << ',' << sim.counted_null << ','
                       << sim.counted_alt << ',' << (sim.low_confidence ? 1 : 0) << "\n";
                }
            }
            emit(sim_opts, out,
                 sim_opts.format == "json" ? rows.dump(2) + "\n" : os.str());
        } else if (tables_cmd->parsed()) {
            TableOptions options;
            options.alpha0 = tables_opts.alpha0;
            if (has_xi) options.pbic_xi = tables_xi;
            if (has_d) options.pbic_d = tables_d;
            emit(tables_opts, out, reproduce_table(table_id, options).csv());
        } else if (mc_cmd->parsed()) {
            const McCheckResult result =
                null_law_mc_check(mc_n, mc_j, mc_q, mc_draws, mc_opts.seed);
            if (mc_opts.format == "json") {
                emit(mc_opts, out,
                     nlohmann::ordered_json{{"ks_gamma", result.ks_gamma},
                                            {"ks_beta", result.ks_beta}}
                             .dump(2) +
                         "\n");
            } else {
                emit(mc_opts, out,
                     "ks_gamma " + fmt_full(result.ks_gamma) + "\nks_beta " +
                         fmt_full(result.ks_beta) + "\n");
            }
        }
    } catch (const usage_failure& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        err << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace adaptalpha
