#include "adaptalpha/calibration.hpp"

#include <cmath>
#include <cstdio>

#include "adaptalpha/adaptive_alpha.hpp"
#include "adaptalpha/errors.hpp"
#include "adaptalpha/linear_model.hpp"

namespace adaptalpha {

namespace {

std::string describe(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

}  // namespace

CalibrationStrategy CalibrationStrategy::simple(double alpha0) {
    return {StrategyKind::simple, alpha0, {}, {}, {}};
}
CalibrationStrategy CalibrationStrategy::minimal_balanced(double alpha0) {
    return {StrategyKind::minimal_balanced, alpha0, {}, {}, {}};
}
CalibrationStrategy CalibrationStrategy::anchored(int anchor_n, double alpha0) {
    return {StrategyKind::anchored, alpha0, anchor_n, {}, {}};
}
CalibrationStrategy CalibrationStrategy::pbic_with(PBICInputs inputs, double alpha0) {
    return {StrategyKind::pbic, alpha0, {}, {}, std::move(inputs)};
}

const char* CalibrationStrategy::name() const {
    switch (kind) {
        case StrategyKind::simple: return "simple";
        case StrategyKind::minimal_balanced: return "minimal";
        case StrategyKind::anchored: return "anchored";
        case StrategyKind::pbic: return "pbic";
    }
    return "?";
}

CalibrationConstant c_alpha_simple(int n, int j, const GammaLaw& law, double alpha0) {
    if (n <= j)
        throw degenerate_design_error("simple calibration requires n > j");
    const double g = gamma_quantile_upper(law, alpha0);
    return {std::exp(-law.rate * g), 0.0, alpha0, describe("simple(alpha0=%g)", alpha0)};
}

CalibrationConstant c_alpha_minimal_balanced(int q, double alpha0) {
    if (q < 1)
        throw domain_error("minimal balanced calibration requires q >= 1");
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw domain_error("alpha0 must lie in (0,1)");
    const int n_min = 2 * (q + 1);
    const int j_min = q + 1;
    const double g = gamma_quantile_upper(null_law(n_min, j_min, q), alpha0);
    const double log_b_min = q * std::log(2.0) - std::log(q + 1.0);
    const double log_c =
        std::log(alpha0) + (q + 1.0) / (2.0 * (2.0 * q + 1.0)) * log_b_min +
        std::lgamma(q / 2.0) - (q / 2.0 - 1.0) * std::log(g + log_b_min);
    return {std::exp(log_c), 0.0, alpha0, describe("minimal(alpha0=%g)", alpha0)};
}

CalibrationConstant c_alpha_anchored(int n0, int j, int q, double log_b0, double alpha0,
                                     double c_prior) {
    if (n0 <= j)
        throw domain_error("anchored calibration requires anchor sample size n0 > j");
    const double g0 = gamma_quantile_upper(null_law(n0, j, q), alpha0);
    const double log_kernel = adaptive_alpha_log_kernel(g0, log_b0, c_prior, n0, j, q);
    if (!std::isfinite(log_kernel))
        throw domain_error("anchored calibration: degenerate anchor (kernel is zero)");
    return {alpha0 / std::exp(log_kernel), c_prior, alpha0,
            describe("anchored(n0=%g, alpha0=%g)", n0, alpha0)};
}

double pbic_v(const PBICTerm& term) {
    if (!(term.d > 0.0) || !(term.n_eff > 0.0))
        throw domain_error("PBIC term requires d > 0 and n_eff > 0");
    if (!(term.xi_hat >= 0.0))
        throw domain_error("PBIC term requires xi_hat >= 0");
    return term.xi_hat / (term.d * (1.0 + term.n_eff));
}

namespace {

// log((1-e^-v)/(sqrt(2) v)), continuous at v = 0 where the value is
// log(1/sqrt(2)).
double log_pbic_factor(double v) {
    if (v < 0.0)
        throw domain_error("PBIC v must be nonnegative");
    if (v < 1e-8)
        return -0.5 * std::log(2.0) + std::log1p(-v / 2.0 + v * v / 6.0);
    return std::log(-std::expm1(-v)) - std::log(v) - 0.5 * std::log(2.0);
}

}  // namespace

double pbic_constant(const PBICInputs& inputs) {
    double c = 0.0;
    for (const auto& term : inputs.null_terms) c += 2.0 * log_pbic_factor(pbic_v(term));
    for (const auto& term : inputs.alt_terms) c -= 2.0 * log_pbic_factor(pbic_v(term));
    return c;
}

CalibrationConstant c_alpha_pbic(int n, int j, const GammaLaw& law, double alpha0,
                                 double c_prior) {
    if (n <= j)
        throw degenerate_design_error("PBIC calibration requires n > j");
    const double g = gamma_quantile_upper(law, alpha0);
    return {std::exp(-law.rate * (g + c_prior)), c_prior, alpha0,
            describe("pbic(alpha0=%g, C=%g)", alpha0, c_prior)};
}

Tess tess_balanced_anova(int k, int r) {
    if (k < 2 || r < 1)
        throw domain_error("tess_balanced_anova requires k >= 2 and r >= 1");
    return {static_cast<double>(r), std::nullopt};
}

Tess tess_findley(int n) {
    const double h = harmonic_number(n);
    return {h, 1.0 / h};
}

Tess tess_two_means(int n1, int n2, double var1, double var2) {
    if (n1 < 1 || n2 < 1 || !(var1 > 0.0) || !(var2 > 0.0))
        throw domain_error("tess_two_means requires positive group sizes and variances");
    const double d = var1 / n1 + var2 / n2;
    const double n_eff = std::max(n1 * static_cast<double>(n1) / var1,
                                  n2 * static_cast<double>(n2) / var2) * d;
    return {n_eff, d};
}

}  // namespace adaptalpha
