#include "anno/data_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace anno {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "", "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail("IoError", "", "cannot read file: " + path);
    return ss.str();
}

// Splits RFC 4180 content into records of fields. Quoted fields may contain
// commas, CR/LF, and doubled quotes. A trailing newline does not produce an
// empty record.
std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool any = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(record);
        record.clear();
    };

    while (i < n) {
        char c = text[i];
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r') {
            if (i + 1 < n && text[i + 1] == '\n') ++i;
            end_record();
            ++i;
        } else if (c == '\n') {
            end_record();
            ++i;
        } else {
            field += c;
            ++i;
        }
    }
    if (in_quotes) fail("MalformedCsv", "", "unterminated quoted field");
    if (any && (!field.empty() || field_was_quoted || !record.empty())) end_record();
    return records;
}

bool parse_finite_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end) return false;
    return std::isfinite(out);
}

ColumnType infer_column_type(const std::vector<std::vector<std::string>>& records,
                             std::size_t col) {
    bool all_number = true;
    bool all_temporal = true;
    bool any_value = false;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const std::string& cell = records[r][col];
        if (cell.empty()) continue;
        any_value = true;
        double d;
        if (all_number && !parse_finite_number(cell, d)) all_number = false;
        if (all_temporal && !parse_iso8601(cell)) all_temporal = false;
        if (!all_number && !all_temporal) break;
    }
    if (!any_value) return ColumnType::String;
    if (all_number) return ColumnType::Number;
    if (all_temporal) return ColumnType::Temporal;
    return ColumnType::String;
}

Value convert_cell(const std::string& cell, ColumnType type, const std::string& col_name,
                   std::size_t row_1based) {
    if (cell.empty()) return Value::null();
    switch (type) {
        case ColumnType::Number: {
            double d;
            if (!parse_finite_number(cell, d)) {
                fail("TypeConflict", "",
                     "column '" + col_name + "' row " + std::to_string(row_1based) + ": '" + cell +
                         "' is not a finite number");
            }
            return Value(d);
        }
        case ColumnType::Temporal: {
            auto ms = parse_iso8601(cell);
            if (!ms) {
                fail("TypeConflict", "",
                     "column '" + col_name + "' row " + std::to_string(row_1based) + ": '" + cell +
                         "' is not an ISO-8601 timestamp");
            }
            return Value(Temporal{*ms});
        }
        case ColumnType::String:
            return Value(cell);
    }
    return Value::null();
}

std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

DataTable::DataTable(std::vector<Column> columns, std::vector<std::vector<Value>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {}

std::optional<std::size_t> DataTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<ColumnType> DataTable::column_type(const std::string& name) const {
    auto i = column_index(name);
    if (!i) return std::nullopt;
    return columns_[*i].type;
}

DataTable DataTable::load_csv(const std::string& path,
                              const std::map<std::string, ColumnType>& type_hints) {
    std::string text = read_file(path);
    auto records = parse_csv_records(text);
    if (records.empty()) fail("MalformedCsv", "", "missing header row in " + path);

    const auto& header = records[0];
    std::size_t ncols = header.size();
    std::set<std::string> seen;
    for (const auto& name : header) {
        if (name.empty()) fail("MalformedCsv", "", "empty column name in header");
        if (!seen.insert(name).second) fail("MalformedCsv", "", "duplicate column name: " + name);
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != ncols) {
            fail("MalformedCsv", "",
                 "row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                     " fields, expected " + std::to_string(ncols));
        }
    }
    for (const auto& [name, _] : type_hints) {
        if (!seen.count(name)) fail("TypeConflict", "", "type hint for unknown column: " + name);
    }

    std::vector<Column> columns(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
        columns[c].name = header[c];
        auto hint = type_hints.find(header[c]);
        columns[c].type = hint != type_hints.end() ? hint->second : infer_column_type(records, c);
    }

    std::vector<std::vector<Value>> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        std::vector<Value> row(ncols);
        for (std::size_t c = 0; c < ncols; ++c) {
            row[c] = convert_cell(records[r][c], columns[c].type, columns[c].name, r);
        }
        rows.push_back(std::move(row));
    }
    return DataTable(std::move(columns), std::move(rows));
}

DataTable DataTable::from_json_values(const nlohmann::json& array, const std::string& doc_path) {
    if (!array.is_array()) fail("MalformedJson", doc_path, "expected an array of objects");

    std::vector<std::string> col_names;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < array.size(); ++r) {
        const auto& obj = array[r];
        std::string row_path = doc_path + "/" + std::to_string(r);
        if (!obj.is_object()) fail("MalformedJson", row_path, "row is not an object");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                fail("NestedObject", row_path + "/" + it.key(), "row values must be flat");
            }
            if (seen.insert(it.key()).second) col_names.push_back(it.key());
        }
    }

    // Per-column inference over the JSON values. Numbers stay numbers;
    // strings become temporal when every one parses as ISO-8601; mixing
    // numbers and strings coerces the column to string.
    std::vector<Column> columns;
    columns.reserve(col_names.size());
    for (const auto& name : col_names) {
        bool any = false, all_number = true, all_temporal = true;
        for (const auto& obj : array) {
            auto it = obj.find(name);
            if (it == obj.end() || it->is_null()) continue;
            any = true;
            if (it->is_number()) {
                all_temporal = false;
            } else if (it->is_string()) {
                all_number = false;
                if (!parse_iso8601(it->get<std::string>())) all_temporal = false;
            } else {  // boolean
                all_number = false;
                all_temporal = false;
            }
        }
        ColumnType t = ColumnType::String;
        if (any && all_number) t = ColumnType::Number;
        else if (any && all_temporal) t = ColumnType::Temporal;
        columns.push_back({name, t});
    }

    std::vector<std::vector<Value>> rows;
    rows.reserve(array.size());
    for (const auto& obj : array) {
        std::vector<Value> row(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto it = obj.find(columns[c].name);
            if (it == obj.end() || it->is_null()) {
                row[c] = Value::null();
            } else if (columns[c].type == ColumnType::Number) {
                double d = it->get<double>();
                if (!std::isfinite(d)) fail("MalformedJson", doc_path, "non-finite number");
                row[c] = Value(d);
            } else if (columns[c].type == ColumnType::Temporal) {
                row[c] = Value(Temporal{*parse_iso8601(it->get<std::string>())});
            } else if (it->is_string()) {
                row[c] = Value(it->get<std::string>());
            } else if (it->is_boolean()) {
                row[c] = Value(std::string(it->get<bool>() ? "true" : "false"));
            } else {
                row[c] = Value(format_number(it->get<double>()));
            }
        }
        rows.push_back(std::move(row));
    }
    return DataTable(std::move(columns), std::move(rows));
}

DataTable DataTable::load_json_rows(const std::string& path) {
    std::string text = read_file(path);
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) fail("MalformedJson", "", "invalid JSON in " + path);
    return from_json_values(doc, "");
}

std::string DataTable::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) out += ',';
        out += csv_quote(columns_[c].name);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_quote(value_to_text(row[c]));
        }
        out += '\n';
    }
    return out;
}

}  // namespace anno
