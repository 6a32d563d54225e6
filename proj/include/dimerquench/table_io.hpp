#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "exact_dynamics.hpp"
#include "model.hpp"

namespace dimerquench {

enum class ColumnType : std::uint8_t { Real, Integer, Text };

struct Column {
    std::string name;
    ColumnType type = ColumnType::Real;

    bool operator==(const Column &) const = default;
};

using Cell = std::variant<double, std::int64_t, std::string>;

/**
 * A typed table plus a JSON metadata object. Two text encodings:
 *
 * CSV:  "# " + compact metadata JSON (with a "columns" entry), then a header
 *       line of column names, then one line per row.
 * JSON: {"metadata": ..., "columns": [...], "rows": [[...], ...]}.
 *
 * Reals are written in shortest round-trip form; infinities and NaN as the
 * strings "inf", "-inf" and "nan". Parsing an emitted file and emitting it
 * again reproduces it byte for byte.
 */
struct DataTable {
    nlohmann::json metadata = nlohmann::json::object();
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    /// Index of the named column; throws std::out_of_range if absent.
    [[nodiscard]] std::size_t column_index(std::string_view name) const;

    /// Appends a row after checking arity and cell types.
    void add_row(std::vector<Cell> row);

    /// Values of a Real column.
    [[nodiscard]] std::vector<double> real_column(std::string_view name) const;

    bool operator==(const DataTable &) const = default;
};

enum class TableFormat : std::uint8_t { Csv, Json };

[[nodiscard]] TableFormat parse_table_format(std::string_view text);

[[nodiscard]] std::string format_real(double value);
[[nodiscard]] double parse_real(std::string_view text);

[[nodiscard]] std::string to_csv(const DataTable &table);
[[nodiscard]] DataTable from_csv(std::string_view text);

[[nodiscard]] std::string to_json_text(const DataTable &table);
[[nodiscard]] DataTable from_json_text(std::string_view text);

[[nodiscard]] std::string emit(const DataTable &table, TableFormat format);

/// Detects the format from the first non-blank character ('#' or '{').
[[nodiscard]] DataTable parse_table(std::string_view text);

void write_text_file(const std::filesystem::path &path, std::string_view content);
[[nodiscard]] std::string read_text_file(const std::filesystem::path &path);

/// Model parameters as the metadata fields n, J, delta and boundary.
[[nodiscard]] nlohmann::json params_metadata(const ModelParams &params);
[[nodiscard]] ModelParams params_from_metadata(const nlohmann::json &metadata);

/**
 * One observable sampled on a strictly increasing time grid. Values are
 * finite, except that the return rate may hold +inf at echo zeros.
 */
struct TimeSeries {
    ModelParams params;
    Observable observable = Observable::Echo;
    std::vector<double> grid;
    std::vector<double> values;
    std::optional<std::uint64_t> seed;

    /// Throws std::invalid_argument when the invariants fail.
    void validate() const;

    /// Columns t and the observable name; metadata n, J, delta, boundary, observable, seed, version.
    [[nodiscard]] DataTable to_table(std::string_view version) const;
    [[nodiscard]] static TimeSeries from_table(const DataTable &table);

    bool operator==(const TimeSeries &) const = default;
};

/// n evenly spaced points from 0 to t_max inclusive; n >= 2.
[[nodiscard]] std::vector<double> linear_grid(double t_max, int points);

} // namespace dimerquench
