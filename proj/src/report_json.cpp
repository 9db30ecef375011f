#include "adaptalpha/report_json.hpp"

namespace adaptalpha {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const AlphaResult& r) {
    return ordered_json{{"alpha_adaptive", r.alpha_adaptive},
                        {"alpha_adaptive_display", r.display_alpha()},
                        {"g", r.g},
                        {"adaptive_quantile", r.adaptive_quantile},
                        {"log_b", r.log_b},
                        {"c_prior", r.c_prior},
                        {"c_alpha", r.c_alpha},
                        {"alpha0", r.alpha0},
                        {"n", r.n},
                        {"j", r.j},
                        {"q", r.q},
                        {"strategy", r.strategy}};
}

ordered_json to_json(const TestReport& r) {
    return ordered_json{{"T", r.statistic},
                        {"p_exact", r.p_exact},
                        {"p_gamma", r.p_gamma},
                        {"alpha_adaptive", r.alpha_adaptive},
                        {"alpha_adaptive_display", r.alpha_adaptive_display},
                        {"adaptive_quantile", r.adaptive_quantile},
                        {"classical_alpha", r.classical_alpha},
                        {"reject_adaptive", r.reject_adaptive},
                        {"reject_classical", r.reject_classical},
                        {"log_b", r.log_b},
                        {"diagnostics",
                         ordered_json{{"g", r.diagnostics.g},
                                      {"c_prior", r.diagnostics.c_prior},
                                      {"c_alpha", r.diagnostics.c_alpha},
                                      {"alpha0", r.diagnostics.alpha0},
                                      {"n", r.diagnostics.n},
                                      {"i", r.diagnostics.i},
                                      {"j", r.diagnostics.j},
                                      {"q", r.diagnostics.q},
                                      {"strategy", r.diagnostics.strategy}}}};
}

ordered_json to_json(const RegressionTestResult& result) {
    ordered_json diag;
    diag["retained"] = result.diagnostics.retained;
    diag["entering"] = result.diagnostics.entering;
    ordered_json variances = ordered_json::object();
    for (size_t c = 0; c < result.diagnostics.entering.size(); ++c)
        variances[result.diagnostics.entering[c]] =
            result.diagnostics.entering_variances[static_cast<int>(c)];
    diag["entering_variances"] = variances;
    ordered_json correlations = ordered_json::object();
    for (size_t a = 0; a < result.diagnostics.retained.size(); ++a)
        for (size_t c = 0; c < result.diagnostics.entering.size(); ++c)
            correlations["cor(" + result.diagnostics.retained[a] + "," +
                         result.diagnostics.entering[c] + ")"] =
                result.diagnostics.cross_correlations(static_cast<int>(a),
                                                      static_cast<int>(c));
    diag["correlations"] = correlations;
    diag["log_b_direct"] = result.diagnostics.log_b_direct;
    diag["log_b_correlation"] = result.diagnostics.log_b_correlation;
    diag["b"] = result.diagnostics.b;
    ordered_json out;
    out["report"] = to_json(result.report);
    out["regression"] = diag;
    return out;
}

TestReport test_report_from_json(const json& j) {
    TestReport r;
    r.statistic = j.at("T").get<double>();
    r.p_exact = j.at("p_exact").get<double>();
    r.p_gamma = j.at("p_gamma").get<double>();
    r.alpha_adaptive = j.at("alpha_adaptive").get<double>();
    r.alpha_adaptive_display = j.at("alpha_adaptive_display").get<double>();
    r.adaptive_quantile = j.at("adaptive_quantile").get<double>();
    r.classical_alpha = j.at("classical_alpha").get<double>();
    r.reject_adaptive = j.at("reject_adaptive").get<bool>();
    r.reject_classical = j.at("reject_classical").get<bool>();
    r.log_b = j.at("log_b").get<double>();
    const auto& d = j.at("diagnostics");
    r.diagnostics.g = d.at("g").get<double>();
    r.diagnostics.c_prior = d.at("c_prior").get<double>();
    r.diagnostics.c_alpha = d.at("c_alpha").get<double>();
    r.diagnostics.alpha0 = d.at("alpha0").get<double>();
    r.diagnostics.n = d.at("n").get<int>();
    r.diagnostics.i = d.at("i").get<int>();
    r.diagnostics.j = d.at("j").get<int>();
    r.diagnostics.q = d.at("q").get<int>();
    r.diagnostics.strategy = d.at("strategy").get<std::string>();
    return r;
}

bool operator==(const TestDiagnostics& a, const TestDiagnostics& b) {
    return a.g == b.g && a.c_prior == b.c_prior && a.c_alpha == b.c_alpha &&
           a.alpha0 == b.alpha0 && a.n == b.n && a.i == b.i && a.j == b.j && a.q == b.q &&
           a.strategy == b.strategy;
}

bool operator==(const TestReport& a, const TestReport& b) {
    return a.statistic == b.statistic && a.p_exact == b.p_exact && a.p_gamma == b.p_gamma &&
           a.alpha_adaptive == b.alpha_adaptive &&
           a.alpha_adaptive_display == b.alpha_adaptive_display &&
           a.adaptive_quantile == b.adaptive_quantile &&
           a.classical_alpha == b.classical_alpha &&
           a.reject_adaptive == b.reject_adaptive &&
           a.reject_classical == b.reject_classical && a.log_b == b.log_b &&
           a.diagnostics == b.diagnostics;
}

}  // namespace adaptalpha
