#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace adaptalpha {

// Typed failures with a stable machine-readable code. The CLI maps any
// adaptalpha::error onto exit status 2 and prints code + message.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Invalid argument or parameter outside the mathematical domain.
class domain_error : public error {
public:
    explicit domain_error(const std::string& m) : error("domain", m) {}
};

// Iterative routine failed to converge; message carries diagnostics.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& m) : error("numeric", m) {}
};

// Design matrix rank-deficient (collinear or repeated predictors).
class singular_design_error : public error {
public:
    explicit singular_design_error(const std::string& m) : error("singular-design", m) {}
};

// No residual degrees of freedom (n <= j).
class degenerate_design_error : public error {
public:
    explicit degenerate_design_error(const std::string& m) : error("degenerate-design", m) {}
};

// Data make the statistic undefined (perfect fit under the null model).
class degenerate_data_error : public error {
public:
    explicit degenerate_data_error(const std::string& m) : error("degenerate-data", m) {}
};

// Requested target cannot be reached (e.g. power analysis with zero effect).
class no_solution_error : public error {
public:
    explicit no_solution_error(const std::string& m) : error("no-solution", m) {}
};

// Malformed input file; message names the offending row/column.
class parse_error : public error {
public:
    explicit parse_error(const std::string& m) : error("parse", m) {}
};

}  // namespace adaptalpha
