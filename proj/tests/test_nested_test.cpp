#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "adaptalpha/dataset.hpp"
#include "adaptalpha/errors.hpp"
#include "adaptalpha/nested_test.hpp"
#include "adaptalpha/rng.hpp"

using namespace adaptalpha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Dataset& mpg_data() {
    static Dataset ds = parse_dataset_csv(std::string(ADAPTALPHA_DATA_DIR) + "/mpg.csv");
    return ds;
}

}  // namespace

TEST_CASE("nested test on a null-effect response") {
    Eigen::MatrixXd alt(4, 2);
    alt.col(0).setOnes();
    alt.col(1) << 1, -1, 1, -1;
    NestedPair pair = NestedPair::create(alt.leftCols(1), alt);
    Eigen::VectorXd y(4);
    y << 1, 1, 3, 3;
    const TestReport report = run_nested_test(pair, y, CalibrationStrategy::simple());
    REQUIRE_THAT(report.statistic, WithinAbs(0.0, 1e-11));
    REQUIRE_THAT(report.p_gamma, WithinAbs(1.0, 1e-10));
    REQUIRE_THAT(report.p_exact, WithinAbs(1.0, 1e-10));
    REQUIRE_FALSE(report.reject_adaptive);
    REQUIRE_FALSE(report.reject_classical);
    REQUIRE(report.diagnostics.strategy.find("simple") != std::string::npos);
}

TEST_CASE("vehicle dataset regression tests") {
    const Dataset& data = mpg_data();
    REQUIRE(data.n_rows() == 82);
    REQUIRE(data.names == std::vector<std::string>{"mpg", "vol", "hp", "sp", "wt"});

    struct Expected {
        const char* predictor;
        double variance, correlation, b, p;
    };
    // reference summary values for the three single-predictor extensions
    const Expected cases[] = {{"sp", 197.1, 0.68, 8612.9, 0.0325},
                              {"hp", 3230.9, 0.83, 80449.5, 0.1661},
                              {"vol", 491.3, 0.38, 33901.1, 0.6482}};

    for (const auto& expected : cases) {
        DYNAMIC_SECTION("entering predictor " << expected.predictor) {
            const RegressionTestResult result =
                run_regression_test(data, "mpg", {"wt"}, {"wt", expected.predictor},
                                    CalibrationStrategy::simple());
            REQUIRE_THAT(result.diagnostics.entering_variances[0],
                         WithinRel(expected.variance, 5e-3));
            REQUIRE_THAT(result.diagnostics.cross_correlations(0, 0),
                         WithinAbs(expected.correlation, 5e-3));
            REQUIRE_THAT(result.diagnostics.b, WithinRel(expected.b, 0.015));
            REQUIRE_THAT(result.report.p_gamma, WithinAbs(expected.p, 0.002));
            REQUIRE_THAT(result.report.p_exact, WithinAbs(expected.p, 0.002));
            // the two determinant routes agree
            REQUIRE_THAT(result.diagnostics.log_b_correlation,
                         WithinRel(result.diagnostics.log_b_direct, 1e-8));
        }
    }

    SECTION("decision flip on the speed predictor") {
        const RegressionTestResult simple = run_regression_test(
            data, "mpg", {"wt"}, {"wt", "sp"}, CalibrationStrategy::simple());
        REQUIRE(simple.report.reject_classical);
        REQUIRE_FALSE(simple.report.reject_adaptive);
        REQUIRE(simple.report.alpha_adaptive < 0.001);

        PBICInputs inputs{{}, {PBICTerm{1.0, 1.0, 82.0}}};
        const RegressionTestResult pbic = run_regression_test(
            data, "mpg", {"wt"}, {"wt", "sp"},
            CalibrationStrategy::pbic_with(inputs));
        REQUIRE(pbic.report.reject_classical);
        REQUIRE_FALSE(pbic.report.reject_adaptive);
        REQUIRE(pbic.report.diagnostics.c_prior > 0.0);
    }

    SECTION("error paths") {
        REQUIRE_THROWS_AS(run_regression_test(data, "mpg", {"wt"}, {"wt", "missing"},
                                              CalibrationStrategy::simple()),
                          domain_error);
        REQUIRE_THROWS_AS(run_regression_test(data, "mpg", {"vol"}, {"wt", "sp"},
                                              CalibrationStrategy::simple()),
                          domain_error);
        // perfectly collinear entering column
        Dataset copy = data;
        copy.names.push_back("wt2");
        copy.columns.push_back(copy.column("wt"));
        REQUIRE_THROWS_AS(run_regression_test(copy, "mpg", {"wt"}, {"wt", "wt2"},
                                              CalibrationStrategy::simple()),
                          singular_design_error);
    }
}

TEST_CASE("report decisions follow the tail comparisons") {
    const Dataset& data = mpg_data();
    for (const char* predictor : {"sp", "hp", "vol"}) {
        const RegressionTestResult result = run_regression_test(
            data, "mpg", {"wt"}, {"wt", predictor}, CalibrationStrategy::simple());
        const TestReport& report = result.report;
        REQUIRE(report.reject_adaptive == (report.p_gamma < report.alpha_adaptive));
        REQUIRE(report.reject_classical == (report.p_gamma < report.classical_alpha));
        // same decision through the quantile rule, evaluated with the same
        // tail function
        const GammaLaw law =
            null_law(report.diagnostics.n, report.diagnostics.j, report.diagnostics.q);
        const double threshold = gamma_quantile_upper(law, report.alpha_adaptive);
        REQUIRE(report.reject_adaptive == (report.statistic > threshold));
    }
}

TEST_CASE("exact and Gamma p-values stay close on simulated data") {
    Eigen::MatrixXd alt(120, 3);
    alt.col(0).setOnes();
    RngStream rng(41, 0);
    for (int r = 0; r < 120; ++r) {
        alt(r, 1) = rng.next_normal();
        alt(r, 2) = rng.next_normal();
    }
    NestedPair pair = NestedPair::create(alt.leftCols(1), alt);
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::VectorXd y(120);
        for (int r = 0; r < 120; ++r) y[r] = rng.next_normal();
        const TestReport report = run_nested_test(pair, y, CalibrationStrategy::simple());
        REQUIRE(std::fabs(report.p_exact - report.p_gamma) < 0.002);
    }
}
