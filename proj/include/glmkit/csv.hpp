#pragma once

#include "glmkit/dataset.hpp"

#include <string>
#include <vector>

namespace glmkit {

/// Parsed CSV table: header row required, all cells numeric, missing values
/// rejected.
struct CsvTable {
    std::vector<std::string> columns;
    Matrix values; // n x columns.size()

    Index column_index(const std::string& name) const; // throws ParseError
};

CsvTable read_csv(const std::string& path);

/// Assemble a Dataset from a table: `response` columns become y (in order),
/// optional weight/offset columns are pulled out, everything else is X.
Dataset dataset_from_table(const CsvTable& table,
                           const std::vector<std::string>& response,
                           const std::string& weight_column = "",
                           const std::string& offset_column = "");

/// Groups file: one line per group, comma-separated zero-based column
/// indices.
std::vector<std::vector<Index>> read_groups(const std::string& path);

} // namespace glmkit
