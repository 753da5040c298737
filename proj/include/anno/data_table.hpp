// data_table.hpp - Tabular data ingestion (CSV, JSON rows) with column type
// inference. Tables are immutable after construction and safe to share
// read-only across threads.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "anno/diagnostics.hpp"
#include "anno/value.hpp"

namespace anno {

struct Column {
    std::string name;
    ColumnType type = ColumnType::String;
};

class DataTable {
public:
    DataTable() = default;
    DataTable(std::vector<Column> columns, std::vector<std::vector<Value>> rows);

    // Loads an RFC 4180 CSV with a mandatory header row. Column types are
    // inferred per column unless overridden by `type_hints`:
    //   every non-empty cell parses as a finite number  -> number
    //   every non-empty cell parses as ISO-8601         -> temporal
    //   otherwise                                       -> string
    // Empty cells become null. Ragged rows raise MalformedCsv; a hint that
    // contradicts the data raises TypeConflict; an unreadable file raises
    // IoError.
    static DataTable load_csv(const std::string& path,
                              const std::map<std::string, ColumnType>& type_hints = {});

    // Loads a JSON array of flat objects. The union of keys (in first-seen
    // order) becomes the column set; missing keys become nulls. Object or
    // array values raise NestedObject; a non-array document raises
    // MalformedJson.
    static DataTable load_json_rows(const std::string& path);

    // Same ingestion as load_json_rows but from an in-memory array (the
    // spec envelope's inline "values"). `doc_path` prefixes diagnostics.
    static DataTable from_json_values(const nlohmann::json& array, const std::string& doc_path);

    std::size_t row_count() const { return rows_.size(); }
    std::size_t column_count() const { return columns_.size(); }
    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t i) const { return columns_[i]; }
    std::optional<std::size_t> column_index(const std::string& name) const;
    std::optional<ColumnType> column_type(const std::string& name) const;

    const Value& at(std::size_t row, std::size_t col) const { return rows_[row][col]; }
    const std::vector<Value>& row(std::size_t i) const { return rows_[i]; }

    // Serializes back to CSV (canonical ISO-8601 temporals, shortest
    // round-trip numbers, RFC 4180 quoting). load_csv(write) reproduces the
    // same column types and values.
    std::string to_csv() const;

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Value>> rows_;
};

}  // namespace anno
