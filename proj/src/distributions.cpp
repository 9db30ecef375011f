#include "adaptalpha/distributions.hpp"

#include <cmath>
#include <string>

#include "adaptalpha/errors.hpp"
#include "adaptalpha/special_functions.hpp"

namespace adaptalpha {

using special::beta_inc;
using special::beta_inc_inv;
using special::gamma_q;
using special::gamma_q_inv;

GammaLaw::GammaLaw(double shape_, double rate_) : shape(shape_), rate(rate_) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
        throw domain_error("GammaLaw requires shape > 0 and rate > 0 (got shape=" +
                           std::to_string(shape_) + ", rate=" + std::to_string(rate_) + ")");
}

BetaNullLaw::BetaNullLaw(double a_, double b_, double scale_) : a(a_), b(b_), scale(scale_) {
    if (!(a > 0.0) || !(b > 0.0) || !(scale >= 1.0))
        throw domain_error("BetaNullLaw requires a > 0, b > 0, scale >= 1");
}

PowerDesign::PowerDesign(int groups_, double effect_f_, double alpha_, double power_)
    : groups(groups_), effect_f(effect_f_), alpha(alpha_), power(power_) {
    if (groups < 2)
        throw domain_error("PowerDesign requires at least 2 groups");
    if (!(effect_f >= 0.0) || !std::isfinite(effect_f))
        throw domain_error("PowerDesign requires a finite effect size f >= 0");
    if (!(0.0 < alpha && alpha < power && power < 1.0))
        throw domain_error("PowerDesign requires 0 < alpha < power < 1");
}

GammaLaw null_law(int n, int j, int q) {
    if (j < 1 || q < 1 || q > j)
        throw domain_error("null_law requires j >= 1 and 1 <= q <= j");
    if (n <= j)
        throw degenerate_design_error("null law undefined: no residual degrees of freedom (n=" +
                                      std::to_string(n) + " <= j=" + std::to_string(j) + ")");
    return GammaLaw(q / 2.0, (n - j) / (2.0 * (n - 1)));
}

BetaNullLaw beta_null_law(int n, int j, int q) {
    if (j < 1 || q < 1 || q > j)
        throw domain_error("beta_null_law requires j >= 1 and 1 <= q <= j");
    if (n <= j)
        throw degenerate_design_error("beta null law undefined: n <= j");
    return BetaNullLaw((n - j) / 2.0, q / 2.0, n - 1.0);
}

double gamma_upper_tail(const GammaLaw& law, double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        if (std::isinf(z) && z > 0.0) return 0.0;
        throw domain_error("gamma_upper_tail requires z >= 0, got z=" + std::to_string(z));
    }
    return gamma_q(law.shape, law.rate * z);
}

double gamma_quantile_upper(const GammaLaw& law, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("gamma_quantile_upper requires alpha in (0,1), got " +
                           std::to_string(alpha));
    return gamma_q_inv(law.shape, alpha) / law.rate;
}

double chi_square_quantile_upper(int q, double alpha) {
    return gamma_quantile_upper(GammaLaw(q / 2.0, 0.5), alpha);
}

double exact_null_tail(const BetaNullLaw& law, double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        if (std::isinf(z) && z > 0.0) return 0.0;
        throw domain_error("exact_null_tail requires z >= 0, got z=" + std::to_string(z));
    }
    // P(T > z) = P(Y < e^{-z/scale}) for Y ~ Beta(a, b)
    return beta_inc(law.a, law.b, std::exp(-z / law.scale));
}

double gamma_tail_expansion(const GammaLaw& law, double g) {
    if (!(g > 0.0) || !std::isfinite(g))
        throw domain_error("gamma_tail_expansion requires g > 0");
    double x = law.rate * g;
    return std::exp((law.shape - 1.0) * std::log(x) - x - std::lgamma(law.shape));
}

namespace {

// P(F' > x) for noncentral F(df1, df2, lambda): Poisson-weighted central
// incomplete-beta terms, truncated when the remaining Poisson mass < 1e-12.
double noncentral_f_upper(double x, double df1, double df2, double lambda) {
    const double y = df1 * x / (df1 * x + df2);
    const double half = 0.5 * lambda;
    double weight = std::exp(-half);  // Poisson(half) mass at m = 0
    double cum_weight = weight;
    double cdf = weight * beta_inc(0.5 * df1, 0.5 * df2, y);
    for (int m = 1; cum_weight < 1.0 - 1e-12; ++m) {
        weight *= half / m;
        cum_weight += weight;
        cdf += weight * beta_inc(0.5 * df1 + m, 0.5 * df2, y);
        if (m > 10000)
            throw numeric_error("noncentral F mixture failed to converge (lambda=" +
                                std::to_string(lambda) + ")");
    }
    return 1.0 - cdf;
}

}  // namespace

double anova_f_power(int k, int r, double f, double alpha) {
    if (k < 2 || r < 2)
        throw domain_error("anova_f_power requires k >= 2 and r >= 2");
    const double df1 = k - 1;
    const double df2 = static_cast<double>(k) * (r - 1);
    const double lambda = static_cast<double>(k) * r * f * f;
    // central F upper-alpha critical value via the inverse incomplete beta
    const double y_crit = beta_inc_inv(0.5 * df1, 0.5 * df2, 1.0 - alpha);
    const double f_crit = df2 * y_crit / (df1 * (1.0 - y_crit));
    return noncentral_f_upper(f_crit, df1, df2, lambda);
}

int solve_replicates(const PowerDesign& design) {
    if (design.effect_f <= 0.0)
        throw no_solution_error("power target unreachable with zero effect size");
    for (int r = 2; r <= 2'000'000; ++r) {
        if (anova_f_power(design.groups, r, design.effect_f, design.alpha) >= design.power)
            return r;
    }
    throw no_solution_error("no replicate count below 2e6 reaches the requested power");
}

}  // namespace adaptalpha
