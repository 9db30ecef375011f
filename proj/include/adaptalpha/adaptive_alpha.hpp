#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "adaptalpha/calibration.hpp"
#include "adaptalpha/distributions.hpp"

namespace adaptalpha {

// An adaptive significance level together with everything that produced it.
// alpha_adaptive is reported unclamped; display_alpha() clamps to [0,1] for
// presentation only.
struct AlphaResult {
    double alpha_adaptive;
    double g;                  // upper-alpha0 quantile of the null law
    double adaptive_quantile;  // g + log b (+ C under PBIC), on the T scale
    double log_b;
    double c_prior;
    double c_alpha;
    double alpha0;
    int n = 0;
    int j = 0;
    int q = 0;
    std::string strategy;

    double display_alpha() const { return std::min(1.0, alpha_adaptive); }
};

// log of [g + log b + C]^(q/2-1) / (b^rate (1/rate)^(q/2-1) Gamma(q/2)),
// all powers in log space. Throws domain_error when the bracket
// g + log b + C is not positive.
double adaptive_alpha_log_kernel(double g, double log_b, double c_prior, int n, int j, int q);

// Adaptive threshold on the T scale.
double adaptive_quantile(double g, double log_b, double c_prior);

// The adaptive alpha for a nested linear-model comparison with design
// information log b, evaluated under a resolved calibration constant.
AlphaResult adaptive_alpha(double log_b, int n, int j, int q, const CalibrationConstant& cal);

// Resolves a strategy into its calibration constant for the given
// comparison. Anchored strategies read anchor_n as a total sample size n0
// and anchor_log_b as the reference log b (defaulting to log_b itself).
CalibrationConstant resolve_calibration(const CalibrationStrategy& strategy, int n, int j,
                                        int q, double log_b);

// adaptive_alpha with the strategy resolved against this comparison.
AlphaResult nested_adaptive_alpha(double log_b, int n, int j, int q,
                                  const CalibrationStrategy& strategy);

// Sample-size-only adaptive alpha,
//   [chi2_alpha(q) + q log n]^(q/2-1) / (2^(q/2-1) n^(q/2) Gamma(q/2)) * C_alpha,
// with C_alpha = exp(-chi2_alpha(q)/2), or anchored so the value equals
// alpha0 at n = anchor_n.
AlphaResult bic_adaptive_alpha(int n, int q, double alpha0,
                               std::optional<int> anchor_n = std::nullopt);

// Balanced one-way layout: n = k*r, j = k, q = k-1,
// log b = (k-1) log r - log k. An anchored strategy reads anchor_n as the
// reference replicate count r0.
AlphaResult anova_adaptive_alpha(int k, int r, const CalibrationStrategy& strategy);

}  // namespace adaptalpha
