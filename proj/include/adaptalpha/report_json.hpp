#pragma once

#include <string>

#include <json.hpp>

#include "adaptalpha/adaptive_alpha.hpp"
#include "adaptalpha/nested_test.hpp"

namespace adaptalpha {

// JSON report schema mirrors the struct field names one-to-one; doubles are
// serialized losslessly so parse(emit(report)) == report.
nlohmann::ordered_json to_json(const AlphaResult& result);
nlohmann::ordered_json to_json(const TestReport& report);
nlohmann::ordered_json to_json(const RegressionTestResult& result);

TestReport test_report_from_json(const nlohmann::json& j);
bool operator==(const TestDiagnostics& a, const TestDiagnostics& b);
bool operator==(const TestReport& a, const TestReport& b);

}  // namespace adaptalpha
