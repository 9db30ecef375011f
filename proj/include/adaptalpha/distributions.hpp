#pragma once

namespace adaptalpha {

// Null law of the statistic T = -(n-1) log(rss_alt/rss_null):
// Ga(shape = q/2, rate = (n-j)/(2(n-1))). The rate tends to 1/2 from below,
// so the law tends to chi-square(q) as n grows.
struct GammaLaw {
    double shape;
    double rate;
    GammaLaw(double shape, double rate);
};

// Exact finite-sample law: the residual quadratic-form ratio is
// Beta(a = (n-j)/2, b = q/2), with T = -scale * log(ratio), scale = n-1.
struct BetaNullLaw {
    double a;
    double b;
    double scale;
    BetaNullLaw(double a, double b, double scale);
};

// One-way ANOVA power-analysis target: k groups, effect size f (Cohen's f,
// equal to half the standardized two-group mean difference), test level and
// desired power.
struct PowerDesign {
    int groups;
    double effect_f;
    double alpha;
    double power;
    PowerDesign(int groups, double effect_f, double alpha, double power);
};

GammaLaw null_law(int n, int j, int q);
BetaNullLaw beta_null_law(int n, int j, int q);

// P(Z > z) for Z ~ law.
double gamma_upper_tail(const GammaLaw& law, double z);

// g with gamma_upper_tail(law, g) = alpha. Satisfies the exact scaling
// identity g = chi2_alpha(q) * (n-1)/(n-j).
double gamma_quantile_upper(const GammaLaw& law, double alpha);

// Upper-alpha quantile of chi-square(q); the rate-1/2 member of the family.
double chi_square_quantile_upper(int q, double alpha);

// P(T > z) for the exact Beta-based law.
double exact_null_tail(const BetaNullLaw& law, double z);

// Leading-order upper-tail expansion of the Gamma law,
//   (rate*g)^(shape-1) exp(-rate*g) / Gamma(shape),
// returned unclamped; may exceed 1 for small g.
double gamma_tail_expansion(const GammaLaw& law, double g);

// Power of the level-alpha one-way ANOVA F test with k groups of r
// replicates and noncentrality k*r*f^2 (noncentral F via a Poisson mixture
// of incomplete-beta terms, truncated when the remaining mass < 1e-12).
double anova_f_power(int k, int r, double f, double alpha);

// Smallest per-group replicate count reaching design.power.
int solve_replicates(const PowerDesign& design);

}  // namespace adaptalpha
