#include "adaptalpha/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "adaptalpha/errors.hpp"

namespace adaptalpha {

bool Dataset::has(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& Dataset::column(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw domain_error("unknown column '" + name + "' in " + source);
    return columns[static_cast<size_t>(it - names.begin())];
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

}  // namespace

Dataset parse_dataset_csv_text(std::string_view text, std::string source) {
    Dataset ds;
    ds.source = std::move(source);

    size_t pos = 0;
    int line_no = 0;
    auto next_line = [&](std::string_view& out) {
        if (pos >= text.size()) return false;
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        out = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header) || trim(header).empty())
        throw parse_error(ds.source + ": no header");
    std::set<std::string> seen;
    for (auto cell : split_line(header)) {
        if (cell.empty())
            throw parse_error(ds.source + ": empty column name in header");
        std::string name(cell);
        if (!seen.insert(name).second)
            throw parse_error(ds.source + ": duplicate column name '" + name + "'");
        ds.names.push_back(std::move(name));
    }
    ds.columns.assign(ds.names.size(), {});

    std::string_view line;
    while (next_line(line)) {
        if (trim(line).empty()) continue;  // tolerate trailing blank lines
        auto cells = split_line(line);
        if (cells.size() != ds.names.size())
            throw parse_error(ds.source + ": line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(ds.names.size()));
        for (size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty())
                throw parse_error(ds.source + ": line " + std::to_string(line_no) +
                                  ": missing value in column '" + ds.names[c] + "'");
            double value = 0.0;
            const char* first = cells[c].data();
            const char* last = first + cells[c].size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last)
                throw parse_error(ds.source + ": line " + std::to_string(line_no) +
                                  ": non-numeric cell '" + std::string(cells[c]) +
                                  "' in column '" + ds.names[c] + "'");
            ds.columns[c].push_back(value);
        }
    }
    if (ds.n_rows() < 3)
        throw parse_error(ds.source + ": needs at least 3 data rows, found " +
                          std::to_string(ds.n_rows()));
    return ds;
}

Dataset parse_dataset_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset_csv_text(buffer.str(), path);
}

}  // namespace adaptalpha
