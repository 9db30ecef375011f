#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "adaptalpha/errors.hpp"
#include "adaptalpha/linear_model.hpp"
#include "adaptalpha/rng.hpp"

using namespace adaptalpha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// brute-force cofactor expansion, test-side determinant oracle
double cofactor_det(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (int c = 0; c < n; ++c) {
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (int rr = 1; rr < n; ++rr)
            for (int cc = 0, mc = 0; cc < n; ++cc)
                if (cc != c) minor(rr - 1, mc++) = m(rr, cc);
        det += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_det(minor);
    }
    return det;
}

// maximized Gaussian log likelihood with the MLE variance plugged in
double max_log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const double n = static_cast<double>(y.size());
    const FitSummary fit = ols_fit(x, y);
    return -0.5 * n * (std::log(2.0 * M_PI * fit.s2) + 1.0);
}

Eigen::MatrixXd random_matrix(RngStream& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.next_normal();
    return m;
}

Eigen::VectorXd random_vector(RngStream& rng, int rows) {
    Eigen::VectorXd v(rows);
    for (int r = 0; r < rows; ++r) v[r] = rng.next_normal();
    return v;
}

// random nested design: intercept + normal columns, alt extends null
NestedPair random_pair(RngStream& rng, int n, int i, int j) {
    Eigen::MatrixXd alt(n, j);
    alt.col(0).setOnes();
    alt.rightCols(j - 1) = random_matrix(rng, n, j - 1);
    return NestedPair::create(alt.leftCols(i), alt);
}

}  // namespace

TEST_CASE("ols_fit") {
    SECTION("intercept-only gives the mean") {
        Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(5, 1);
        Eigen::VectorXd y(5);
        y << 1.0, 4.0, 2.0, 8.0, 5.0;
        const FitSummary fit = ols_fit(ones, y);
        REQUIRE_THAT(fit.coefficients[0], WithinRel(4.0, 1e-14));
        REQUIRE_THAT(fit.rss, WithinRel((y.array() - 4.0).square().sum(), 1e-13));
        REQUIRE_THAT(fit.rss, WithinRel(5.0 * fit.s2, 1e-12));
    }

    SECTION("saturated fit has zero residual") {
        Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 3);
        Eigen::VectorXd y(3);
        y << 1.0, -2.0, 0.5;
        const FitSummary fit = ols_fit(x, y);
        REQUIRE_THAT(fit.rss, WithinAbs(0.0, 1e-24));
        REQUIRE_THAT(fit.s2, WithinAbs(0.0, 1e-24));
    }

    SECTION("hand-solved normal equations") {
        Eigen::MatrixXd x(3, 2);
        x << 1, 0, 1, 1, 1, 2;
        Eigen::VectorXd y(3);
        y << 0, 1, 1;
        const FitSummary fit = ols_fit(x, y);
        REQUIRE_THAT(fit.coefficients[0], WithinRel(1.0 / 6.0, 1e-12));
        REQUIRE_THAT(fit.coefficients[1], WithinRel(0.5, 1e-12));
        REQUIRE_THAT(fit.rss, WithinRel(1.0 / 6.0, 1e-12));
    }

    SECTION("empty design leaves y'y") {
        Eigen::VectorXd y(4);
        y << 1, 2, 3, 4;
        REQUIRE_THAT(ols_fit(Eigen::MatrixXd(4, 0), y).rss, WithinRel(30.0, 1e-14));
    }

    SECTION("rank-deficient design") {
        Eigen::MatrixXd x(4, 2);
        x << 1, 2, 1, 2, 1, 2, 1, 2;
        Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
        REQUIRE_THROWS_AS(ols_fit(x, y), singular_design_error);
    }
}

TEST_CASE("nested pair validation") {
    RngStream rng(7, 0);
    REQUIRE_NOTHROW(random_pair(rng, 12, 2, 4));

    SECTION("non-nested designs are rejected") {
        Eigen::MatrixXd alt(6, 2);
        alt.col(0).setOnes();
        alt.col(1) << 1, 2, 3, 4, 5, 6;
        Eigen::MatrixXd other(6, 1);
        other << 1, -1, 1, -1, 1, -1;  // not in span(alt)
        REQUIRE_THROWS_AS(NestedPair::create(other, alt), domain_error);
    }

    SECTION("no residual degrees of freedom") {
        Eigen::MatrixXd alt = Eigen::MatrixXd::Identity(3, 3);
        REQUIRE_THROWS_AS(NestedPair::create(alt.leftCols(1), alt),
                          degenerate_design_error);
    }
}

TEST_CASE("likelihood ratio statistic") {
    SECTION("orthogonal added column gives T = 0") {
        Eigen::MatrixXd alt(4, 2);
        alt.col(0).setOnes();
        alt.col(1) << 1, -1, 1, -1;
        NestedPair pair = NestedPair::create(alt.leftCols(1), alt);
        Eigen::VectorXd y(4);
        y << 1, 1, 3, 3;  // orthogonal to the second column
        const LrStatistic lr = lr_statistic(pair, y);
        REQUIRE_THAT(lr.ratio, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(lr.statistic, WithinAbs(0.0, 1e-11));
    }

    SECTION("invariances") {
        RngStream rng(11, 0);
        NestedPair pair = random_pair(rng, 15, 2, 4);
        Eigen::VectorXd y = random_vector(rng, 15);
        const LrStatistic base = lr_statistic(pair, y);
        REQUIRE_THAT(lr_statistic(pair, (3.7 * y).eval()).ratio,
                     WithinRel(base.ratio, 1e-12));
        REQUIRE_THAT(lr_statistic(pair, (-0.04 * y).eval()).ratio,
                     WithinRel(base.ratio, 1e-12));
        // shift within the null span (intercept is in both models)
        REQUIRE_THAT(lr_statistic(pair, (y.array() + 5.5).matrix().eval()).ratio,
                     WithinRel(base.ratio, 1e-9));
    }

    SECTION("nesting keeps the ratio in (0, 1]") {
        RngStream rng(13, 0);
        for (int trial = 0; trial < 40; ++trial) {
            NestedPair pair = random_pair(rng, 10 + trial % 20, 1 + trial % 3,
                                          2 + trial % 4 + trial % 3);
            Eigen::VectorXd y = random_vector(rng, pair.n);
            const LrStatistic lr = lr_statistic(pair, y);
            REQUIRE(lr.ratio > 0.0);
            REQUIRE(lr.ratio <= 1.0);
            REQUIRE(lr.statistic >= 0.0);
        }
    }

    SECTION("matches the explicit likelihood-ratio evaluation") {
        RngStream rng(17, 0);
        for (int trial = 0; trial < 30; ++trial) {
            const int i_cols = 1 + trial % 2;
            NestedPair pair = random_pair(rng, 20, i_cols, i_cols + 1 + trial % 3);
            Eigen::VectorXd y = random_vector(rng, pair.n);
            const LrStatistic lr = lr_statistic(pair, y);
            const double direct = std::exp(max_log_likelihood(pair.x_null, y) -
                                           max_log_likelihood(pair.x_alt, y));
            REQUIRE_THAT(std::pow(lr.ratio, pair.n / 2.0), WithinRel(direct, 1e-10));
        }
    }

    SECTION("perfect null fit is degenerate") {
        Eigen::MatrixXd alt(4, 2);
        alt.col(0).setOnes();
        alt.col(1) << 1, 2, 3, 4;
        NestedPair pair = NestedPair::create(alt.leftCols(1), alt);
        REQUIRE_THROWS_AS(lr_statistic(pair, Eigen::VectorXd::Ones(4)),
                          degenerate_data_error);
    }
}

TEST_CASE("design determinant ratio, direct route") {
    SECTION("identical spans give zero") {
        NestedPair pair;
        pair.x_null = Eigen::MatrixXd::Random(6, 2);
        pair.x_alt = pair.x_null;
        REQUIRE(log_b_direct(pair) == 0.0);
    }

    SECTION("matches a cofactor-expansion oracle") {
        RngStream rng(23, 0);
        for (int trial = 0; trial < 20; ++trial) {
            NestedPair pair = random_pair(rng, 5 + trial % 4, 2, 3);
            const double expected =
                std::log(cofactor_det(pair.x_alt.transpose() * pair.x_alt)) -
                std::log(cofactor_det(pair.x_null.transpose() * pair.x_null));
            REQUIRE_THAT(log_b_direct(pair), WithinRel(expected, 1e-10));
        }
    }
}

TEST_CASE("special designs") {
    SECTION("balanced one-way layout") {
        NestedPair pair = make_anova_design(2, 4);
        REQUIRE(pair.n == 8);
        REQUIRE(pair.q == 1);
        REQUIRE_THAT(log_b_direct(pair), WithinRel(std::log(2.0), 1e-12));
        REQUIRE(pair.effective_sample_size.value() == 4.0);

        REQUIRE_THAT(std::exp(log_b_direct(make_anova_design(5, 40))),
                     WithinRel(512000.0, 1e-10));
        // minimal balanced design of the q=1 calibration
        REQUIRE(make_anova_design(2, 2).n == 4);
        // closed form k^-1 r^(k-1) in general
        REQUIRE_THAT(log_b_direct(make_anova_design(3, 7)),
                     WithinRel(2.0 * std::log(7.0) - std::log(3.0), 1e-12));
    }

    SECTION("two-group design") {
        REQUIRE_THAT(std::exp(log_b_direct(make_two_means_design(10, 10))),
                     WithinRel(5.0, 1e-12));
        REQUIRE_THAT(std::exp(log_b_direct(make_two_means_design(16, 16))),
                     WithinRel(8.0, 1e-12));
        REQUIRE_THAT(std::exp(log_b_direct(make_two_means_design(10, 100))),
                     WithinRel(1000.0 / 110.0, 1e-12));
    }

    SECTION("harmonic-regressor design") {
        REQUIRE(harmonic_number(1) == 1.0);
        REQUIRE_THAT(harmonic_number(2), WithinRel(1.5, 1e-15));
        REQUIRE_THAT(harmonic_number(10), WithinRel(2.92896825396825, 1e-13));
        NestedPair pair = make_findley_design(10);
        REQUIRE(pair.i == 0);
        REQUIRE_THAT(log_b_direct(pair), WithinRel(std::log(harmonic_number(10)), 1e-12));
        REQUIRE_THAT(pair.effective_sample_size.value(),
                     WithinRel(harmonic_number(10), 1e-15));
    }
}

TEST_CASE("design determinant ratio, correlation route") {
    SECTION("uncorrelated entering predictor") {
        Eigen::MatrixXd retained(4, 1), entering(4, 1);
        retained << 1, 2, 3, 4;
        entering << 1, -1, -1, 1;  // exactly uncorrelated with retained
        PredictorStats stats = make_predictor_stats(retained, entering);
        REQUIRE_THAT(stats.r_cross(0, 0), WithinAbs(0.0, 1e-14));
        // log((n-1) s^2), s^2 = 4/3
        REQUIRE_THAT(log_b_correlation(stats, 1), WithinRel(std::log(4.0), 1e-12));
    }

    SECTION("single entering predictor closed form") {
        // (n-1) s^2 (1 - rho^2) with the reference rounded inputs lands
        // within 1% of the reference b
        PredictorStats stats;
        stats.n = 82;
        stats.variances = Eigen::VectorXd::Constant(1, 197.1);
        stats.r_retained = Eigen::MatrixXd::Identity(1, 1);
        stats.r_cross = Eigen::MatrixXd::Constant(1, 1, 0.68);
        stats.r_entering = Eigen::MatrixXd::Identity(1, 1);
        const double b = std::exp(log_b_correlation(stats, 1));
        REQUIRE_THAT(b, WithinRel(81.0 * 197.1 * (1.0 - 0.68 * 0.68), 1e-12));
        REQUIRE(std::fabs(b - 8612.9) / 8612.9 < 0.01);
    }

    SECTION("agrees with the direct route on random regressions") {
        RngStream rng(31, 0);
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 10 + static_cast<int>(rng.next_double() * 90);
            const int i = 2 + trial % 3;
            const int j = i + 1 + trial % 3;
            NestedPair pair = random_pair(rng, n, i, j);
            PredictorStats stats = make_predictor_stats(
                pair.x_null.rightCols(i - 1), pair.x_alt.rightCols(j - i));
            REQUIRE_THAT(log_b_correlation(stats, j - i),
                         WithinRel(log_b_direct(pair), 1e-8));
        }
    }

    SECTION("invariant under reordering of entering predictors") {
        RngStream rng(37, 0);
        NestedPair pair = random_pair(rng, 25, 2, 5);
        Eigen::MatrixXd entering = pair.x_alt.rightCols(3);
        Eigen::MatrixXd swapped(25, 3);
        swapped << entering.col(2), entering.col(0), entering.col(1);
        const double original = log_b_correlation(
            make_predictor_stats(pair.x_null.rightCols(1), entering), 3);
        const double permuted = log_b_correlation(
            make_predictor_stats(pair.x_null.rightCols(1), swapped), 3);
        REQUIRE_THAT(original, WithinRel(permuted, 1e-12));
    }

    SECTION("degenerate inputs") {
        Eigen::MatrixXd retained(4, 1), entering(4, 1);
        retained << 1, 2, 3, 4;
        entering << 2, 2, 2, 2;
        REQUIRE_THROWS_AS(make_predictor_stats(retained, entering), domain_error);

        PredictorStats bad;
        bad.n = 10;
        bad.variances = Eigen::VectorXd::Constant(1, 1.0);
        bad.r_retained = Eigen::MatrixXd::Constant(2, 2, 1.0);  // singular
        bad.r_cross = Eigen::MatrixXd::Zero(2, 1);
        bad.r_entering = Eigen::MatrixXd::Identity(1, 1);
        REQUIRE_THROWS_AS(log_b_correlation(bad, 1), domain_error);
    }
}
