#pragma once

#include <Eigen/Dense>
#include <optional>

namespace adaptalpha {

// Maximum-likelihood OLS summary: s2 uses the MLE divisor n, not n - p.
struct FitSummary {
    Eigen::VectorXd coefficients;
    double s2;
    double rss;
};

struct LrStatistic {
    double ratio;      // rss_alt / rss_null, in (0, 1]
    double statistic;  // T = -(n-1) log(ratio)
};

// A pair of nested designs: span(x_null) contained in span(x_alt).
// x_null may have zero columns (testing against the empty model); then the
// null fit is rss = y'y and the Gram determinant of the null model is 1.
struct NestedPair {
    Eigen::MatrixXd x_null;  // n x i
    Eigen::MatrixXd x_alt;   // n x j
    int n = 0;
    int i = 0;
    int j = 0;
    int q = 0;  // j - i
    std::optional<double> effective_sample_size;

    // Validates dimensions, full column rank of both designs, and nesting
    // (projection of x_null onto span(x_alt) reproduces it to 1e-8 relative).
    static NestedPair create(Eigen::MatrixXd x_null, Eigen::MatrixXd x_alt);
};

// Sample second moments of the predictors entering the larger model,
// for the correlation factorization of the design determinant ratio.
// Variances and correlations use centered columns and the n-1 divisor.
struct PredictorStats {
    Eigen::VectorXd variances;   // q entering predictors
    Eigen::MatrixXd r_retained;  // correlations among retained predictors (may be 0x0)
    Eigen::MatrixXd r_cross;     // retained x entering
    Eigen::MatrixXd r_entering;  // entering x entering
    int n = 0;
};

FitSummary ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

LrStatistic lr_statistic(const NestedPair& pair, const Eigen::VectorXd& y);

// log |x_alt' x_alt| - log |x_null' x_null| via QR log-determinants.
double log_b_direct(const NestedPair& pair);

// log b per the correlation factorization:
//   q log(n-1) + sum log s_l^2 + log |R_e - R_c' R_r^{-1} R_c|.
double log_b_correlation(const PredictorStats& stats, int q);

PredictorStats make_predictor_stats(const Eigen::MatrixXd& retained,
                                    const Eigen::MatrixXd& entering);

// Balanced one-way layout: intercept-only null versus k group indicators,
// n = k*r rows; log b = (k-1) log r - log k; effective sample size r.
NestedPair make_anova_design(int k, int r);

// Two-group mean comparison written as columns (1, +-1/2);
// b = n1*n2/(n1+n2).
NestedPair make_two_means_design(int n1, int n2);

// Single regressor 1/sqrt(row index) against the empty model;
// b = sum 1/i (the harmonic number), which is also the effective sample size.
NestedPair make_findley_design(int n);

double harmonic_number(int n);

}  // namespace adaptalpha
