#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adaptalpha/distributions.hpp"

namespace adaptalpha {

enum class StrategyKind { simple, minimal_balanced, anchored, pbic };

// One per-parameter term of the PBIC prior constant:
// v = xi_hat / (d * (1 + n_eff)).
struct PBICTerm {
    double xi_hat;  // squared effect estimate
    double d;
    double n_eff;   // effective sample size (TESS)
};

struct PBICInputs {
    std::vector<PBICTerm> null_terms;  // parameters of the smaller model
    std::vector<PBICTerm> alt_terms;   // parameters of the larger model
};

struct CalibrationStrategy {
    StrategyKind kind = StrategyKind::simple;
    double alpha0 = 0.05;
    // anchored: reference sample size (per-group replicates for the ANOVA
    // helper, total rows otherwise) and optional reference log b.
    std::optional<int> anchor_n;
    std::optional<double> anchor_log_b;
    std::optional<PBICInputs> pbic;

    static CalibrationStrategy simple(double alpha0 = 0.05);
    static CalibrationStrategy minimal_balanced(double alpha0 = 0.05);
    static CalibrationStrategy anchored(int anchor_n, double alpha0 = 0.05);
    static CalibrationStrategy pbic_with(PBICInputs inputs, double alpha0 = 0.05);
    const char* name() const;
};

// Resolved multiplicative constant of the adaptive-alpha formula, plus the
// additive prior constant C (zero for non-PBIC strategies) and provenance.
struct CalibrationConstant {
    double c_alpha;
    double c_prior;
    double alpha0;
    std::string provenance;
};

// Effective sample size (TESS) and the per-parameter scale d of a design.
// The balanced ANOVA case carries no d; callers must supply one for PBIC.
struct Tess {
    double n_eff;
    std::optional<double> d;
};

// C_alpha = exp(-rate * g), with g the upper-alpha0 quantile of the null
// law. By the scaling identity this equals exp(-chi2_alpha0(q)/2) for all n.
CalibrationConstant c_alpha_simple(int n, int j, const GammaLaw& law, double alpha0);

// C_alpha = alpha0 * b_min^((q+1)/(2(2q+1))) * Gamma(q/2)
//           / [g_min + log b_min]^(q/2-1),
// with b_min = 2^q/(q+1) and g_min the quantile at the minimal balanced
// design n = 2(q+1), j = q+1. For q = 1 this is alpha0 * sqrt(pi * g_min).
CalibrationConstant c_alpha_minimal_balanced(int q, double alpha0);

// C_alpha chosen so the adaptive alpha equals alpha0 exactly at the
// reference design (n0, log_b0).
CalibrationConstant c_alpha_anchored(int n0, int j, int q, double log_b0, double alpha0,
                                     double c_prior = 0.0);

double pbic_v(const PBICTerm& term);

// C = 2 sum_null log((1-e^-v)/(sqrt(2) v)) - 2 sum_alt log(...), with the
// v -> 0 limit (1-e^-v)/(sqrt(2) v) -> 1/sqrt(2) handled analytically.
double pbic_constant(const PBICInputs& inputs);

// C_alpha = exp(-rate * (g + C)).
CalibrationConstant c_alpha_pbic(int n, int j, const GammaLaw& law, double alpha0,
                                 double c_prior);

Tess tess_balanced_anova(int k, int r);
Tess tess_findley(int n);
Tess tess_two_means(int n1, int n2, double var1, double var2);

}  // namespace adaptalpha
