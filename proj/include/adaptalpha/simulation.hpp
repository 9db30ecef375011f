#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adaptalpha {

// The false-positive contamination experiment: 2K two-group datasets per
// outer replicate, K generated under the null (equal means) and K under a
// mean difference of effect*sigma. Without adjustment, a test counts when
// its p-value falls in (window_low, window_high); with the PBIC adjustment
// a test counts when p is below its own plug-in adaptive alpha. The result
// is the share of counted tests that came from null data.
struct Table3Config {
    int r = 100;                // per-group sample size
    int tests_per_state = 4000; // K
    double effect = 0.25;       // true mean difference in sigma units
    double sigma = 1.0;
    double window_low = 0.01;
    double window_high = 0.05;
    int outer_reps = 100;
    std::uint64_t seed = 0;
    double alpha0 = 0.05;
    enum class Adjustment { none, pbic } adjustment = Adjustment::none;
    enum class PValueKind { exact, gamma } p_value = PValueKind::exact;
    int workers = 1;
};

struct SimResult {
    double pct_from_null = 0.0;  // median over outer reps, in percent
    double mc_stderr = 0.0;      // large-sample stderr of that median
    long long counted_null = 0;  // raw tallies over all reps
    long long counted_alt = 0;
    std::vector<double> rep_percentages;  // NaN for reps with no counted tests
    bool low_confidence = false;          // some rep had no counted tests
};

SimResult table3_experiment(const Table3Config& cfg);

// Simulates null-model Gaussian data on a fixed random nested design and
// returns Kolmogorov-Smirnov distances of the statistic sample against the
// Gamma null law and of the residual-ratio sample against the exact Beta law.
struct McCheckResult {
    double ks_gamma = 0.0;
    double ks_beta = 0.0;
};

McCheckResult null_law_mc_check(int n, int j, int q, int n_draws, std::uint64_t seed);

// KS distance between a sample and a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

// Reference-table generators. PBIC columns need an effect input (xi = the
// squared effect estimate); without one the cell reads "requires-input".
struct TableOptions {
    double alpha0 = 0.05;
    std::optional<double> pbic_xi;
    std::optional<double> pbic_d;  // ANOVA-table PBIC scale, caller-supplied
};

struct TableResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string csv() const;
};

// table_id: T1 (anchored one-way layout), T2 (one-way layout, three
// calibrations), T5 (harmonic-regressor model), T6 (two means with unequal
// variances).
TableResult reproduce_table(const std::string& table_id, const TableOptions& options = {});

}  // namespace adaptalpha
