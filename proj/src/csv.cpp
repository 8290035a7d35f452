#include "attrition/csv.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace attrition {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// One CSV record, possibly spanning several physical lines when a quoted
// field embeds a newline. Returns false on end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += static_cast<char>(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(field);
            return true;
        } else if (c == '\n') {
            fields.push_back(field);
            return true;
        } else {
            field += static_cast<char>(c);
        }
    }
    if (!any) return false;
    fields.push_back(field);
    return true;
}

}  // namespace

std::size_t RawTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::runtime_error("dataset: unknown column '" + name + "'");
}

void validate_schema(const std::vector<ColumnSpec>& schema) {
    if (schema.empty()) throw std::runtime_error("dataset: empty schema");
    std::size_t labels = 0;
    std::set<std::string> names;
    for (const auto& col : schema) {
        if (!names.insert(col.name).second)
            throw std::runtime_error("dataset: duplicate schema column '" + col.name + "'");
        if (col.kind == ColumnKind::label) ++labels;
        if (col.kind == ColumnKind::ordinal || col.kind == ColumnKind::nominal) {
            if (col.levels.empty())
                throw std::runtime_error("dataset: column '" + col.name +
                                         "' declares no levels");
            std::set<std::string> seen(col.levels.begin(), col.levels.end());
            if (seen.size() != col.levels.size())
                throw std::runtime_error("dataset: column '" + col.name +
                                         "' has duplicate levels");
        }
    }
    if (labels != 1)
        throw std::runtime_error("dataset: schema must declare exactly one label column, found " +
                                 std::to_string(labels));
}

std::vector<ColumnSpec> load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dataset: cannot open schema file '" + path + "'");
    std::vector<ColumnSpec> schema;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        ColumnSpec col;
        std::string kind, levels;
        ss >> col.name >> kind;
        if (col.name.empty() || kind.empty())
            throw std::runtime_error("dataset: malformed schema line " + std::to_string(lineno) +
                                     " in '" + path + "'");
        if (kind == "numeric") {
            col.kind = ColumnKind::numeric;
        } else if (kind == "label") {
            col.kind = ColumnKind::label;
        } else if (kind == "ordinal" || kind == "nominal") {
            col.kind = kind == "ordinal" ? ColumnKind::ordinal : ColumnKind::nominal;
            std::getline(ss, levels);
            levels = trim(levels);
            if (levels.empty())
                throw std::runtime_error("dataset: schema line " + std::to_string(lineno) +
                                         ": " + kind + " column '" + col.name +
                                         "' needs a level list");
            col.levels = split_list(levels, ',');
        } else {
            throw std::runtime_error("dataset: schema line " + std::to_string(lineno) +
                                     ": unknown column kind '" + kind + "'");
        }
        schema.push_back(std::move(col));
    }
    validate_schema(schema);
    return schema;
}

RawTable read_csv(std::istream& in, const std::vector<ColumnSpec>& schema,
                  const std::string& origin) {
    validate_schema(schema);
    RawTable table;
    if (!read_record(in, table.columns) || table.columns.empty())
        throw std::runtime_error("dataset: empty file '" + origin + "'");

    // Order-insensitive header check against the schema names.
    std::set<std::string> header(table.columns.begin(), table.columns.end());
    if (header.size() != table.columns.size())
        throw std::runtime_error("dataset: duplicate header column in '" + origin + "'");
    std::set<std::string> expected;
    for (const auto& col : schema) expected.insert(col.name);
    if (header != expected) {
        std::string msg = "dataset: header of '" + origin + "' does not match schema;";
        for (const auto& name : expected)
            if (!header.count(name)) msg += " missing '" + name + "'";
        for (const auto& name : header)
            if (!expected.count(name)) msg += " unexpected '" + name + "'";
        throw std::runtime_error(msg);
    }

    std::vector<std::string> fields;
    while (read_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != table.columns.size())
            throw std::runtime_error("dataset: ragged row " +
                                     std::to_string(table.rows.size() + 1) + " in '" + origin +
                                     "': expected " + std::to_string(table.columns.size()) +
                                     " cells, got " + std::to_string(fields.size()));
        table.rows.push_back(fields);
    }
    return table;
}

RawTable load_csv(const std::string& path, const std::vector<ColumnSpec>& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("dataset: cannot open file '" + path + "'");
    return read_csv(in, schema, path);
}

}  // namespace attrition
