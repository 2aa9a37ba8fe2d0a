#include "glmkit/csv.hpp"

#include "glmkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace glmkit {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    if (cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan")
        throw ParseError("missing value in column '" + col + "' at data row " +
                         std::to_string(row + 1));
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("non-numeric value '" + cell + "' in column '" + col + "'");
    return v;
}

} // namespace

Index CsvTable::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw ParseError("column '" + name + "' not found in CSV header");
    return static_cast<Index>(it - columns.begin());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV file: " + path);
    CsvTable table;
    table.columns = split_line(line);
    if (table.columns.empty()) throw ParseError("CSV header row is empty");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != table.columns.size())
            throw ParseError("row " + std::to_string(rows.size() + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(table.columns.size()));
        std::vector<double> row(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j)
            row[j] = parse_cell(cells[j], rows.size(), table.columns[j]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("CSV has no data rows: " + path);

    table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(table.columns.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return table;
}

Dataset dataset_from_table(const CsvTable& table,
                           const std::vector<std::string>& response,
                           const std::string& weight_column,
                           const std::string& offset_column) {
    if (response.empty()) throw InvalidInputError("no response column given");

    std::vector<Index> y_cols;
    for (const auto& name : response) y_cols.push_back(table.column_index(name));

    std::vector<Index> skip = y_cols;
    Dataset data;
    if (!weight_column.empty()) {
        const Index c = table.column_index(weight_column);
        data.sample_weights = table.values.col(c);
        skip.push_back(c);
    }
    if (!offset_column.empty()) {
        const Index c = table.column_index(offset_column);
        data.offsets = table.values.col(c);
        skip.push_back(c);
    }

    std::vector<Index> x_cols;
    for (Index j = 0; j < table.values.cols(); ++j)
        if (std::find(skip.begin(), skip.end(), j) == skip.end()) x_cols.push_back(j);
    if (x_cols.empty()) throw InvalidInputError("no covariate columns left after removing response");

    data.X.resize(table.values.rows(), static_cast<Index>(x_cols.size()));
    for (std::size_t j = 0; j < x_cols.size(); ++j)
        data.X.col(static_cast<Index>(j)) = table.values.col(x_cols[j]);
    data.y.resize(table.values.rows(), static_cast<Index>(y_cols.size()));
    for (std::size_t j = 0; j < y_cols.size(); ++j)
        data.y.col(static_cast<Index>(j)) = table.values.col(y_cols[j]);

    validate(data);
    return data;
}

std::vector<std::vector<Index>> read_groups(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::vector<Index>> groups;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<Index> g;
        for (const auto& cell : split_line(line)) {
            const char* begin = cell.c_str();
            char* end = nullptr;
            const long v = std::strtol(begin, &end, 10);
            if (end == begin || *end != '\0' || v < 0)
                throw ParseError("bad group index '" + cell + "' in " + path);
            g.push_back(static_cast<Index>(v));
        }
        if (!g.empty()) groups.push_back(std::move(g));
    }
    if (groups.empty()) throw ParseError("groups file has no groups: " + path);
    return groups;
}

} // namespace glmkit
