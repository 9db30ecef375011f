#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adaptalpha {

// Column-oriented numeric table read from CSV.
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::string source;

    int n_rows() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
    bool has(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
};

// Comma-separated, header row, '.' decimal separator regardless of locale.
// Rejects duplicate column names, non-numeric cells and short rows, naming
// the offending file line.
Dataset parse_dataset_csv(const std::string& path);
Dataset parse_dataset_csv_text(std::string_view text, std::string source);

}  // namespace adaptalpha
