#include "dimerquench/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dimerquench {

namespace {

std::string_view column_type_name(ColumnType type) {
    switch (type) {
    case ColumnType::Real:
        return "real";
    case ColumnType::Integer:
        return "integer";
    case ColumnType::Text:
        return "text";
    }
    return "?";
}

ColumnType parse_column_type(std::string_view text) {
    if (text == "real") {
        return ColumnType::Real;
    }
    if (text == "integer") {
        return ColumnType::Integer;
    }
    if (text == "text") {
        return ColumnType::Text;
    }
    throw std::invalid_argument("unknown column type '" + std::string(text) + "'");
}

bool cell_matches(const Cell &cell, ColumnType type) {
    switch (type) {
    case ColumnType::Real:
        return std::holds_alternative<double>(cell);
    case ColumnType::Integer:
        return std::holds_alternative<std::int64_t>(cell);
    case ColumnType::Text:
        return std::holds_alternative<std::string>(cell);
    }
    return false;
}

nlohmann::json columns_json(const std::vector<Column> &columns) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &c : columns) {
        out.push_back({{"name", c.name}, {"type", std::string(column_type_name(c.type))}});
    }
    return out;
}

std::vector<Column> columns_from_json(const nlohmann::json &doc) {
    std::vector<Column> out;
    for (const auto &c : doc) {
        out.push_back({c.at("name").get<std::string>(),
                       parse_column_type(c.at("type").get<std::string>())});
    }
    return out;
}

std::int64_t parse_integer(std::string_view text) {
    std::int64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

std::string format_cell(const Cell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_real(*d);
    }
    if (const auto *i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(cell);
}

Cell parse_cell(std::string_view text, ColumnType type) {
    switch (type) {
    case ColumnType::Real:
        return parse_real(text);
    case ColumnType::Integer:
        return parse_integer(text);
    case ColumnType::Text:
        return std::string(text);
    }
    throw std::invalid_argument("bad column type");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string_view> lines_of(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    for (auto &l : lines) {
        if (!l.empty() && l.back() == '\r') {
            l.remove_suffix(1);
        }
    }
    return lines;
}

} // namespace

std::size_t DataTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) {
            return i;
        }
    }
    throw std::out_of_range("no column named '" + std::string(name) + "'");
}

void DataTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                    std::to_string(columns.size()) + " columns");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!cell_matches(row[i], columns[i].type)) {
            throw std::invalid_argument("cell type mismatch in column '" + columns[i].name + "'");
        }
    }
    rows.push_back(std::move(row));
}

std::vector<double> DataTable::real_column(std::string_view name) const {
    const auto idx = column_index(name);
    if (columns[idx].type != ColumnType::Real) {
        throw std::invalid_argument("column '" + std::string(name) + "' is not real-valued");
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(std::get<double>(r[idx]));
    }
    return out;
}

TableFormat parse_table_format(std::string_view text) {
    if (text == "csv") {
        return TableFormat::Csv;
    }
    if (text == "json") {
        return TableFormat::Json;
    }
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (csv or json)");
}

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::string to_csv(const DataTable &table) {
    nlohmann::json meta = table.metadata;
    meta["columns"] = columns_json(table.columns);
    std::string out = "# " + meta.dump() + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        const auto &name = table.columns[i].name;
        if (name.find_first_of(",\n") != std::string::npos) {
            throw std::invalid_argument("column name '" + name + "' cannot be written as CSV");
        }
        out += (i ? "," : "") + name;
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto cell = format_cell(row[i]);
            if (cell.find_first_of(",\n") != std::string::npos) {
                throw std::invalid_argument("cell '" + cell + "' cannot be written as CSV");
            }
            out += (i ? "," : "") + cell;
        }
        out += "\n";
    }
    return out;
}

DataTable from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.size() < 2 || lines[0].substr(0, 2) != "# ") {
        throw std::invalid_argument("CSV needs a '# {metadata}' line and a header line");
    }
    DataTable table;
    table.metadata = nlohmann::json::parse(lines[0].substr(2));
    if (!table.metadata.is_object() || !table.metadata.contains("columns")) {
        throw std::invalid_argument("CSV metadata lacks the column list");
    }
    table.columns = columns_from_json(table.metadata.at("columns"));
    table.metadata.erase("columns");
    const auto header = split(lines[1], ',');
    if (header.size() != table.columns.size()) {
        throw std::invalid_argument("CSV header does not match the column list");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != table.columns[i].name) {
            throw std::invalid_argument("CSV header does not match the column list");
        }
    }
    for (std::size_t l = 2; l < lines.size(); ++l) {
        const auto fields = split(lines[l], ',');
        if (fields.size() != table.columns.size()) {
            throw std::invalid_argument("CSV line " + std::to_string(l + 1) + " has " +
                                        std::to_string(fields.size()) + " fields");
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            row.push_back(parse_cell(fields[i], table.columns[i].type));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_json_text(const DataTable &table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &cell : row) {
            if (const auto *d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d)) {
                    r.push_back(*d);
                } else {
                    r.push_back(format_real(*d));
                }
            } else if (const auto *i = std::get_if<std::int64_t>(&cell)) {
                r.push_back(*i);
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    nlohmann::json doc = {{"metadata", table.metadata},
                          {"columns", columns_json(table.columns)},
                          {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

DataTable from_json_text(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    DataTable table;
    table.metadata = doc.at("metadata");
    table.columns = columns_from_json(doc.at("columns"));
    for (const auto &r : doc.at("rows")) {
        if (r.size() != table.columns.size()) {
            throw std::invalid_argument("JSON row arity does not match the column list");
        }
        std::vector<Cell> row;
        for (std::size_t i = 0; i < r.size(); ++i) {
            switch (table.columns[i].type) {
            case ColumnType::Real:
                row.emplace_back(r[i].is_string() ? parse_real(r[i].get<std::string>())
                                                  : r[i].get<double>());
                break;
            case ColumnType::Integer:
                row.emplace_back(r[i].get<std::int64_t>());
                break;
            case ColumnType::Text:
                row.emplace_back(r[i].get<std::string>());
                break;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string emit(const DataTable &table, TableFormat format) {
    return format == TableFormat::Csv ? to_csv(table) : to_json_text(table);
}

DataTable parse_table(std::string_view text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string_view::npos) {
        throw std::invalid_argument("empty table text");
    }
    if (text[pos] == '#') {
        return from_csv(text);
    }
    if (text[pos] == '{') {
        return from_json_text(text);
    }
    throw std::invalid_argument("unrecognized table format");
}

void write_text_file(const std::filesystem::path &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json params_metadata(const ModelParams &params) {
    return {{"n", params.n},
            {"J", params.J},
            {"delta", params.delta},
            {"boundary", std::string(to_string(params.boundary))}};
}

ModelParams params_from_metadata(const nlohmann::json &metadata) {
    return {metadata.at("n").get<int>(), metadata.at("J").get<double>(),
            metadata.at("delta").get<double>(),
            parse_boundary(metadata.at("boundary").get<std::string>())};
}

void TimeSeries::validate() const {
    if (grid.size() != values.size()) {
        throw std::invalid_argument("grid and values differ in length");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw std::invalid_argument("non-finite time in grid");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("time grid is not strictly increasing");
        }
        const double v = values[i];
        const bool allowed_inf = observable == Observable::ReturnRate && v == std::numeric_limits<double>::infinity();
        if (!std::isfinite(v) && !allowed_inf) {
            throw std::invalid_argument("non-finite value at t=" + format_real(grid[i]));
        }
    }
}

DataTable TimeSeries::to_table(std::string_view version) const {
    validate();
    DataTable table;
    table.metadata = params_metadata(params);
    table.metadata["observable"] = std::string(to_string(observable));
    table.metadata["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    table.metadata["version"] = std::string(version);
    table.columns = {{"t", ColumnType::Real}, {std::string(to_string(observable)), ColumnType::Real}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.add_row({grid[i], values[i]});
    }
    return table;
}

TimeSeries TimeSeries::from_table(const DataTable &table) {
    TimeSeries ts;
    ts.params = params_from_metadata(table.metadata);
    ts.observable = parse_observable(table.metadata.at("observable").get<std::string>());
    if (table.metadata.contains("seed") && !table.metadata.at("seed").is_null()) {
        ts.seed = table.metadata.at("seed").get<std::uint64_t>();
    }
    ts.grid = table.real_column("t");
    ts.values = table.real_column(to_string(ts.observable));
    ts.validate();
    return ts;
}

std::vector<double> linear_grid(double t_max, int points) {
    if (points < 2) {
        throw std::invalid_argument("a grid needs at least two points");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("t_max must be positive and finite");
    }
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        g[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / (points - 1);
    }
    return g;
}

} // namespace dimerquench
