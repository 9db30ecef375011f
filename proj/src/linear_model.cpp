#include "adaptalpha/linear_model.hpp"

#include <cmath>
#include <string>

#include "adaptalpha/errors.hpp"

namespace adaptalpha {

namespace {

// 2 * sum log |R_kk| from a column-pivoted QR; column permutations leave the
// Gram determinant unchanged.
double gram_log_det(const Eigen::MatrixXd& x, const char* what) {
    if (x.cols() == 0) return 0.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols())
        throw singular_design_error(std::string(what) + " is rank-deficient (rank " +
                                    std::to_string(qr.rank()) + " of " +
                                    std::to_string(x.cols()) + " columns)");
    double log_det = 0.0;
    for (int c = 0; c < x.cols(); ++c)
        log_det += 2.0 * std::log(std::fabs(qr.matrixR()(c, c)));
    return log_det;
}

void check_rank(const Eigen::MatrixXd& x, const char* what) {
    if (x.cols() == 0) return;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols())
        throw singular_design_error(std::string(what) + " is rank-deficient (rank " +
                                    std::to_string(qr.rank()) + " of " +
                                    std::to_string(x.cols()) + " columns)");
}

}  // namespace

NestedPair NestedPair::create(Eigen::MatrixXd x_null, Eigen::MatrixXd x_alt) {
    NestedPair pair;
    pair.n = static_cast<int>(x_alt.rows());
    pair.i = static_cast<int>(x_null.cols());
    pair.j = static_cast<int>(x_alt.cols());
    pair.q = pair.j - pair.i;
    if (x_null.rows() != x_alt.rows())
        throw domain_error("nested designs must have the same number of rows");
    if (pair.j < 1 || pair.q < 1)
        throw domain_error("nested pair requires j >= 1 and j > i");
    if (pair.n <= pair.j)
        throw degenerate_design_error("nested pair has no residual degrees of freedom (n=" +
                                      std::to_string(pair.n) + ", j=" + std::to_string(pair.j) +
                                      ")");
    check_rank(x_alt, "larger design");
    check_rank(x_null, "smaller design");
    if (pair.i > 0) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x_alt);
        Eigen::MatrixXd thin_q =
            qr.householderQ() * Eigen::MatrixXd::Identity(pair.n, pair.j);
        Eigen::MatrixXd residual = x_null - thin_q * (thin_q.transpose() * x_null);
        double rel = residual.norm() / std::max(1.0, x_null.norm());
        if (rel > 1e-8)
            throw domain_error("designs are not nested: projection residual " +
                               std::to_string(rel) + " exceeds 1e-8");
    }
    pair.x_null = std::move(x_null);
    pair.x_alt = std::move(x_alt);
    return pair;
}

FitSummary ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    if (x.rows() != y.size())
        throw domain_error("ols_fit: design has " + std::to_string(x.rows()) +
                           " rows but response has " + std::to_string(y.size()));
    FitSummary fit;
    const double n = static_cast<double>(y.size());
    if (x.cols() == 0) {
        fit.coefficients = Eigen::VectorXd(0);
        fit.rss = y.squaredNorm();
        fit.s2 = fit.rss / n;
        return fit;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols())
        throw singular_design_error("ols_fit: design is rank-deficient");
    fit.coefficients = qr.solve(y);
    fit.rss = (y - x * fit.coefficients).squaredNorm();
    fit.s2 = fit.rss / n;
    return fit;
}

LrStatistic lr_statistic(const NestedPair& pair, const Eigen::VectorXd& y) {
    if (y.size() != pair.n)
        throw domain_error("lr_statistic: response length does not match the design");
    const double rss_null = ols_fit(pair.x_null, y).rss;
    const double rss_alt = ols_fit(pair.x_alt, y).rss;
    if (!(rss_null > 0.0))
        throw degenerate_data_error("null model fits the data perfectly (rss = 0); "
                                    "the likelihood ratio is undefined");
    LrStatistic lr;
    lr.ratio = std::min(rss_alt / rss_null, 1.0);
    lr.statistic = -(pair.n - 1.0) * std::log(lr.ratio);
    return lr;
}

double log_b_direct(const NestedPair& pair) {
    return gram_log_det(pair.x_alt, "larger design") -
           gram_log_det(pair.x_null, "smaller design");
}

double log_b_correlation(const PredictorStats& stats, int q) {
    if (stats.variances.size() != q || stats.r_entering.rows() != q ||
        stats.r_entering.cols() != q || stats.r_cross.cols() != q)
        throw domain_error("log_b_correlation: block dimensions inconsistent with q=" +
                           std::to_string(q));
    if (stats.r_cross.rows() != stats.r_retained.rows() ||
        stats.r_retained.rows() != stats.r_retained.cols())
        throw domain_error("log_b_correlation: retained-block dimensions inconsistent");

    Eigen::MatrixXd schur = stats.r_entering;
    if (stats.r_retained.rows() > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(stats.r_retained);
        if (llt.info() != Eigen::Success)
            throw domain_error("log_b_correlation: retained-predictor correlation matrix "
                               "is not positive definite");
        schur -= stats.r_cross.transpose() * llt.solve(stats.r_cross);
    }
    Eigen::LLT<Eigen::MatrixXd> llt_schur(schur);
    if (llt_schur.info() != Eigen::Success)
        throw domain_error("log_b_correlation: partial-correlation block is not positive "
                           "definite (predictors collinear)");
    double log_det = 0.0;
    for (int c = 0; c < q; ++c)
        log_det += 2.0 * std::log(llt_schur.matrixL()(c, c));

    double log_b = q * std::log(stats.n - 1.0) + log_det;
    for (int l = 0; l < q; ++l) {
        if (!(stats.variances[l] > 0.0))
            throw domain_error("log_b_correlation: entering predictor " + std::to_string(l) +
                               " has zero variance");
        log_b += std::log(stats.variances[l]);
    }
    return log_b;
}

PredictorStats make_predictor_stats(const Eigen::MatrixXd& retained,
                                    const Eigen::MatrixXd& entering) {
    if (retained.rows() != entering.rows())
        throw domain_error("make_predictor_stats: row counts differ");
    const int n = static_cast<int>(entering.rows());
    if (n < 3)
        throw domain_error("make_predictor_stats needs at least 3 rows");

    auto centered = [](const Eigen::MatrixXd& m) {
        return (m.rowwise() - m.colwise().mean()).eval();
    };
    Eigen::MatrixXd rc = centered(retained);
    Eigen::MatrixXd ec = centered(entering);

    auto scales = [n](const Eigen::MatrixXd& m) {
        Eigen::VectorXd sd = (m.colwise().squaredNorm() / (n - 1.0)).cwiseSqrt();
        for (int c = 0; c < sd.size(); ++c)
            if (!(sd[c] > 0.0))
                throw domain_error("constant predictor column (index " + std::to_string(c) +
                                   ") has zero variance");
        return sd;
    };
    Eigen::VectorXd sd_r = scales(rc);
    Eigen::VectorXd sd_e = scales(ec);

    PredictorStats stats;
    stats.n = n;
    stats.variances = sd_e.array().square();
    Eigen::MatrixXd ru = rc * sd_r.cwiseInverse().asDiagonal();
    Eigen::MatrixXd eu = ec * sd_e.cwiseInverse().asDiagonal();
    stats.r_retained = (ru.transpose() * ru) / (n - 1.0);
    stats.r_cross = (ru.transpose() * eu) / (n - 1.0);
    stats.r_entering = (eu.transpose() * eu) / (n - 1.0);
    return stats;
}

NestedPair make_anova_design(int k, int r) {
    if (k < 2 || r < 2)
        throw domain_error("make_anova_design requires k >= 2 groups and r >= 2 replicates");
    const int n = k * r;
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
    Eigen::MatrixXd groups = Eigen::MatrixXd::Zero(n, k);
    for (int g = 0; g < k; ++g)
        groups.block(static_cast<Eigen::Index>(g) * r, g, r, 1).setOnes();
    NestedPair pair = NestedPair::create(std::move(ones), std::move(groups));
    pair.effective_sample_size = r;
    return pair;
}

NestedPair make_two_means_design(int n1, int n2) {
    if (n1 < 2 || n2 < 2)
        throw domain_error("make_two_means_design requires n1, n2 >= 2");
    const int n = n1 + n2;
    Eigen::MatrixXd b(n, 2);
    b.col(0).setOnes();
    b.col(1).head(n1).setConstant(0.5);
    b.col(1).tail(n2).setConstant(-0.5);
    return NestedPair::create(Eigen::MatrixXd::Ones(n, 1), std::move(b));
}

NestedPair make_findley_design(int n) {
    if (n < 2)
        throw domain_error("make_findley_design requires n >= 2");
    Eigen::MatrixXd x(n, 1);
    for (int row = 0; row < n; ++row)
        x(row, 0) = 1.0 / std::sqrt(row + 1.0);
    NestedPair pair = NestedPair::create(Eigen::MatrixXd(n, 0), std::move(x));
    pair.effective_sample_size = harmonic_number(n);
    return pair;
}

double harmonic_number(int n) {
    if (n < 1)
        throw domain_error("harmonic_number requires n >= 1");
    double sum = 0.0;
    for (int i = n; i >= 1; --i)  // small terms first
        sum += 1.0 / i;
    return sum;
}

}  // namespace adaptalpha
