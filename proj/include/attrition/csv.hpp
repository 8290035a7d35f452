#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace attrition {

enum class ColumnKind { numeric, ordinal, nominal, label };

/// Declared type of one raw CSV column. `levels` lists the admissible values
/// for ordinal columns (in rank order) and nominal columns (in code order);
/// it is empty for numeric and label columns.
struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<std::string> levels;
};

/// Raw CSV contents: header names plus text cells, rectangular.
struct RawTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;  // throws if absent
};

/// Schema validation shared by the loaders: exactly one label column,
/// non-empty duplicate-free level lists.
void validate_schema(const std::vector<ColumnSpec>& schema);

/// Parse a schema description file. One column per line:
///   <name> numeric|label
///   <name> ordinal|nominal <level>,<level>,...
/// Blank lines and lines starting with '#' are ignored.
std::vector<ColumnSpec> load_schema(const std::string& path);

/// Load an RFC-4180-style CSV (quoted fields, doubled quotes, embedded
/// separators and newlines). The header row must contain exactly the schema
/// names, in any order. Throws std::runtime_error on missing file, empty
/// file, header/schema mismatch, or a ragged row (message names the 1-based
/// data row index).
RawTable load_csv(const std::string& path, const std::vector<ColumnSpec>& schema);

/// Stream variant of load_csv; `origin` labels the source in error messages.
RawTable read_csv(std::istream& in, const std::vector<ColumnSpec>& schema,
                  const std::string& origin);

}  // namespace attrition
