#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "adaptalpha/adaptive_alpha.hpp"
#include "adaptalpha/calibration.hpp"
#include "adaptalpha/errors.hpp"

using namespace adaptalpha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("simple calibration") {
    // exp(-chi2_alpha(q)/2), independent of n by the scaling identity
    for (int n : {10, 100, 10000}) {
        const auto cal = c_alpha_simple(n, 2, null_law(n, 2, 1), 0.05);
        REQUIRE_THAT(cal.c_alpha, WithinRel(0.146500064486084, 1e-12));
        REQUIRE(cal.c_prior == 0.0);
    }
    REQUIRE_THAT(c_alpha_simple(30, 5, null_law(30, 5, 4), 0.05).c_alpha,
                 WithinRel(0.0087049406962701, 1e-12));
    // alpha0 -> 1 pushes the quantile to zero and the constant to one
    REQUIRE(c_alpha_simple(20, 2, null_law(20, 2, 1), 0.999999).c_alpha > 0.998);
}

TEST_CASE("minimal balanced calibration") {
    const auto q1 = c_alpha_minimal_balanced(1, 0.05);
    REQUIRE_THAT(q1.c_alpha, WithinRel(0.212734859715331, 1e-12));
    // alpha0 * sqrt(pi * g) at the n=4, j=2 design
    REQUIRE_THAT(q1.c_alpha, WithinRel(0.05 * std::sqrt(M_PI * 5.76218823104119), 1e-12));
    // at alpha0 = 0.10 the quantile moves too, so the constant is not
    // exactly twice the 0.05 value
    REQUIRE_THAT(c_alpha_minimal_balanced(1, 0.10).c_alpha,
                 WithinRel(0.357065444408041, 1e-12));
    REQUIRE_THAT(c_alpha_minimal_balanced(3, 0.05).c_alpha,
                 WithinRel(0.014249887527087, 1e-12));
    REQUIRE_THROWS_AS(c_alpha_minimal_balanced(0, 0.05), domain_error);
}

TEST_CASE("anchored calibration") {
    SECTION("evaluating at the anchor returns alpha0 exactly") {
        for (int k : {2, 5, 10}) {
            const int r0 = k == 2 ? 64 : (k == 5 ? 40 : 26);
            const auto result =
                anova_adaptive_alpha(k, r0, CalibrationStrategy::anchored(r0, 0.05));
            REQUIRE_THAT(result.alpha_adaptive, WithinAbs(0.05, 1e-12));
        }
    }

    SECTION("ratios between sample sizes do not depend on the anchor") {
        const auto a50_64 = anova_adaptive_alpha(2, 50, CalibrationStrategy::anchored(64));
        const auto a100_64 = anova_adaptive_alpha(2, 100, CalibrationStrategy::anchored(64));
        const auto a50_40 = anova_adaptive_alpha(2, 50, CalibrationStrategy::anchored(40));
        const auto a100_40 = anova_adaptive_alpha(2, 100, CalibrationStrategy::anchored(40));
        REQUIRE_THAT(a50_64.alpha_adaptive / a100_64.alpha_adaptive,
                     WithinRel(a50_40.alpha_adaptive / a100_40.alpha_adaptive, 1e-12));
    }

    REQUIRE_THROWS_AS(c_alpha_anchored(2, 2, 1, 0.0, 0.05), domain_error);
}

TEST_CASE("PBIC prior constant") {
    SECTION("zero-effect limit is log 2 per entering parameter") {
        REQUIRE_THAT(pbic_constant({{}, {PBICTerm{0.0, 1.0, 10.0}}}),
                     WithinRel(std::log(2.0), 1e-14));
        // continuity at v = 0
        const double at_tiny = pbic_constant({{}, {PBICTerm{1e-12, 1.0, 1.0}}});
        REQUIRE_THAT(at_tiny, WithinAbs(std::log(2.0), 1e-9));
        // two entering parameters double the limit
        REQUIRE_THAT(pbic_constant({{}, {PBICTerm{0.0, 1.0, 1.0}, PBICTerm{0.0, 2.0, 3.0}}}),
                     WithinRel(2.0 * std::log(2.0), 1e-14));
    }

    SECTION("v = 1") {
        // v = xi/(d(1+n_eff)) = 4/(2*(1+1)) = 1
        REQUIRE_THAT(pbic_constant({{}, {PBICTerm{4.0, 2.0, 1.0}}}),
                     WithinRel(1.61049747133411, 1e-13));
    }

    SECTION("identical terms cancel") {
        const PBICTerm term{0.7, 1.3, 12.0};
        REQUIRE_THAT(pbic_constant({{term}, {term}}), WithinAbs(0.0, 1e-15));
    }

    REQUIRE_THROWS_AS(pbic_v(PBICTerm{-1.0, 1.0, 1.0}), domain_error);
    REQUIRE_THROWS_AS(pbic_v(PBICTerm{1.0, 0.0, 1.0}), domain_error);
    REQUIRE_THROWS_AS(pbic_v(PBICTerm{1.0, 1.0, -2.0}), domain_error);
}

TEST_CASE("PBIC calibration constant") {
    SECTION("C = 0 collapses to the simple calibration") {
        const GammaLaw law = null_law(50, 3, 2);
        REQUIRE_THAT(c_alpha_pbic(50, 3, law, 0.05, 0.0).c_alpha,
                     WithinRel(c_alpha_simple(50, 3, law, 0.05).c_alpha, 1e-14));
    }

    SECTION("worked value at n=10, j=1, C=log 2") {
        const auto cal = c_alpha_pbic(10, 1, null_law(10, 1, 1), 0.05, std::log(2.0));
        REQUIRE_THAT(cal.c_alpha, WithinRel(0.103591189042377, 1e-12));
        REQUIRE_THAT(cal.c_prior, WithinRel(std::log(2.0), 1e-15));
    }

    SECTION("decreasing in C, never above simple for C >= 0") {
        const GammaLaw law = null_law(40, 2, 1);
        double prev = 1.0;
        const double simple = c_alpha_simple(40, 2, law, 0.05).c_alpha;
        for (double c : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const double value = c_alpha_pbic(40, 2, law, 0.05, c).c_alpha;
            REQUIRE(value > 0.0);
            REQUIRE(value <= simple + 1e-15);
            REQUIRE(value < prev);
            prev = value;
        }
    }
}

TEST_CASE("effective sample sizes") {
    REQUIRE(tess_findley(1).n_eff == 1.0);
    REQUIRE(tess_findley(1).d.value() == 1.0);
    REQUIRE_THAT(tess_findley(10).n_eff, WithinRel(2.92896825396825, 1e-13));
    REQUIRE_THAT(tess_findley(10).d.value(), WithinRel(1.0 / 2.92896825396825, 1e-13));

    SECTION("two means, equal case") {
        const Tess tess = tess_two_means(7, 7, 3.3, 3.3);
        REQUIRE_THAT(tess.n_eff, WithinRel(14.0, 1e-13));
        REQUIRE_THAT(tess.d.value(), WithinRel(2.0 * 3.3 / 7.0, 1e-13));
    }

    SECTION("two means, unequal variances") {
        const Tess tess = tess_two_means(10, 100, 14.0, 140.0);
        REQUIRE_THAT(tess.d.value(), WithinRel(2.8, 1e-13));
        REQUIRE_THAT(tess.n_eff, WithinRel(200.0, 1e-13));
    }

    SECTION("balanced layout carries no d") {
        const Tess tess = tess_balanced_anova(2, 64);
        REQUIRE(tess.n_eff == 64.0);
        REQUIRE_FALSE(tess.d.has_value());
    }
}
