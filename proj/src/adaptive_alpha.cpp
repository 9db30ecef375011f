#include "adaptalpha/adaptive_alpha.hpp"

#include <cmath>
#include <cstdio>

#include "adaptalpha/errors.hpp"

namespace adaptalpha {

double adaptive_alpha_log_kernel(double g, double log_b, double c_prior, int n, int j, int q) {
    if (n <= j)
        throw degenerate_design_error("adaptive alpha requires n > j");
    const double rate = (n - j) / (2.0 * (n - 1.0));
    const double bracket = g + log_b + c_prior;
    if (!(bracket > 0.0)) {
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "adaptive alpha bracket g + log b + C = %g is not positive "
                      "(g=%g, log_b=%g, C=%g); design information too negative",
                      bracket, g, log_b, c_prior);
        throw domain_error(buf);
    }
    const double half_q_minus_1 = q / 2.0 - 1.0;
    return half_q_minus_1 * (std::log(bracket) - std::log(1.0 / rate)) - rate * log_b -
           std::lgamma(q / 2.0);
}

double adaptive_quantile(double g, double log_b, double c_prior) {
    return g + log_b + c_prior;
}

AlphaResult adaptive_alpha(double log_b, int n, int j, int q, const CalibrationConstant& cal) {
    if (!(cal.c_alpha > 0.0))
        throw domain_error("adaptive_alpha requires a positive calibration constant");
    if (!std::isfinite(log_b))
        throw domain_error("adaptive_alpha requires finite log b");
    const GammaLaw law = null_law(n, j, q);
    const double g = gamma_quantile_upper(law, cal.alpha0);
    AlphaResult result;
    result.alpha_adaptive =
        std::exp(adaptive_alpha_log_kernel(g, log_b, cal.c_prior, n, j, q) + std::log(cal.c_alpha));
    result.g = g;
    result.adaptive_quantile = adaptive_quantile(g, log_b, cal.c_prior);
    result.log_b = log_b;
    result.c_prior = cal.c_prior;
    result.c_alpha = cal.c_alpha;
    result.alpha0 = cal.alpha0;
    result.n = n;
    result.j = j;
    result.q = q;
    result.strategy = cal.provenance;
    return result;
}

CalibrationConstant resolve_calibration(const CalibrationStrategy& strategy, int n, int j,
                                        int q, double log_b) {
    switch (strategy.kind) {
        case StrategyKind::simple:
            return c_alpha_simple(n, j, null_law(n, j, q), strategy.alpha0);
        case StrategyKind::minimal_balanced:
            return c_alpha_minimal_balanced(q, strategy.alpha0);
        case StrategyKind::anchored: {
            if (!strategy.anchor_n)
                throw domain_error("anchored strategy requires an anchor sample size");
            const double log_b0 = strategy.anchor_log_b.value_or(log_b);
            return c_alpha_anchored(*strategy.anchor_n, j, q, log_b0, strategy.alpha0);
        }
        case StrategyKind::pbic: {
            if (!strategy.pbic)
                throw domain_error("pbic strategy requires per-parameter inputs "
                                   "(xi_hat, d, n_eff); none supplied");
            const double c = pbic_constant(*strategy.pbic);
            return c_alpha_pbic(n, j, null_law(n, j, q), strategy.alpha0, c);
        }
    }
    throw domain_error("unknown calibration strategy");
}

AlphaResult nested_adaptive_alpha(double log_b, int n, int j, int q,
                                  const CalibrationStrategy& strategy) {
    return adaptive_alpha(log_b, n, j, q, resolve_calibration(strategy, n, j, q, log_b));
}

namespace {

double bic_log_kernel(int n, int q, double chi2) {
    const double bracket = chi2 + q * std::log(static_cast<double>(n));
    return (q / 2.0 - 1.0) * (std::log(bracket) - std::log(2.0)) -
           (q / 2.0) * std::log(static_cast<double>(n)) - std::lgamma(q / 2.0);
}

}  // namespace

AlphaResult bic_adaptive_alpha(int n, int q, double alpha0, std::optional<int> anchor_n) {
    if (n < 2 || q < 1)
        throw domain_error("bic_adaptive_alpha requires n >= 2 and q >= 1");
    const double chi2 = chi_square_quantile_upper(q, alpha0);
    double c_alpha;
    char label[64];
    if (anchor_n) {
        if (*anchor_n < 2)
            throw domain_error("bic anchor sample size must be >= 2");
        c_alpha = alpha0 / std::exp(bic_log_kernel(*anchor_n, q, chi2));
        std::snprintf(label, sizeof label, "bic-anchored(n0=%d, alpha0=%g)", *anchor_n, alpha0);
    } else {
        c_alpha = std::exp(-chi2 / 2.0);
        std::snprintf(label, sizeof label, "bic-simple(alpha0=%g)", alpha0);
    }
    AlphaResult result;
    result.alpha_adaptive = std::exp(bic_log_kernel(n, q, chi2) + std::log(c_alpha));
    result.g = chi2;
    result.log_b = q * std::log(static_cast<double>(n));
    result.adaptive_quantile = chi2 + result.log_b;
    result.c_prior = 0.0;
    result.c_alpha = c_alpha;
    result.alpha0 = alpha0;
    result.n = n;
    result.j = 1;
    result.q = q;
    result.strategy = label;
    return result;
}

AlphaResult anova_adaptive_alpha(int k, int r, const CalibrationStrategy& strategy) {
    if (k < 2 || r < 2)
        throw domain_error("anova_adaptive_alpha requires k >= 2 and r >= 2");
    const int n = k * r;
    const int j = k;
    const int q = k - 1;
    const double log_b = (k - 1) * std::log(static_cast<double>(r)) -
                         std::log(static_cast<double>(k));
    if (strategy.kind == StrategyKind::anchored) {
        if (!strategy.anchor_n)
            throw domain_error("anchored ANOVA strategy requires the reference replicate "
                               "count r0");
        const int r0 = *strategy.anchor_n;
        if (r0 < 2)
            throw domain_error("anchored ANOVA strategy requires r0 >= 2");
        const double log_b0 = (k - 1) * std::log(static_cast<double>(r0)) -
                              std::log(static_cast<double>(k));
        return adaptive_alpha(log_b, n, j, q,
                              c_alpha_anchored(k * r0, j, q, log_b0, strategy.alpha0));
    }
    return nested_adaptive_alpha(log_b, n, j, q, strategy);
}

}  // namespace adaptalpha
