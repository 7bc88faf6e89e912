// csv.cpp — Result tables and their bit-stable CSV serialization

#include "spinchannel/expcli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spinchannel/types.hpp"

namespace spinchannel::expcli {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns))
{
    if (columns_.empty()) {
        throw ArgumentError("Table: at least one column is required");
    }
}

void Table::add(Row row)
{
    if (row.size() != columns_.size()) {
        throw ShapeError("Table::add: row has " + std::to_string(row.size()) + " cells, expected " +
                         std::to_string(columns_.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (const double* v = std::get_if<double>(&row[i]); v && !std::isfinite(*v)) {
            throw NumericError("Table::add: non-finite value in column '" + columns_[i] + "'");
        }
    }
    rows_.push_back(std::move(row));
}

void Table::append(const Table& other)
{
    if (other.columns_ != columns_) {
        throw ShapeError("Table::append: column sets differ");
    }
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

double Table::number(std::size_t row, const std::string& column) const
{
    const auto it = std::find(columns_.begin(), columns_.end(), column);
    if (it == columns_.end()) {
        throw ArgumentError("Table::number: no column '" + column + "'");
    }
    const Cell& cell = rows_.at(row)[static_cast<std::size_t>(it - columns_.begin())];
    if (const double* v = std::get_if<double>(&cell)) {
        return *v;
    }
    throw ArgumentError("Table::number: column '" + column + "' holds text");
}

Table Table::select(const std::vector<std::string>& columns) const
{
    std::vector<std::size_t> index;
    for (const std::string& name : columns) {
        const auto it = std::find(columns_.begin(), columns_.end(), name);
        if (it == columns_.end()) {
            throw ArgumentError("Table::select: no column '" + name + "'");
        }
        index.push_back(static_cast<std::size_t>(it - columns_.begin()));
    }
    Table out(columns);
    for (const Row& row : rows_) {
        Row picked;
        for (std::size_t i : index) {
            picked.push_back(row[i]);
        }
        out.rows_.push_back(std::move(picked));
    }
    return out;
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

namespace {

std::string quote(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_csv(std::ostream& out, const Table& table)
{
    const auto& columns = table.columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << quote(columns[i]);
    }
    out << '\n';
    for (const Row& row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            if (const double* v = std::get_if<double>(&row[i])) {
                out << format_number(*v);
            } else {
                out << quote(std::get<std::string>(row[i]));
            }
        }
        out << '\n';
    }
}

std::string to_csv(const Table& table)
{
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

void write_csv_file(const std::filesystem::path& path, const Table& table)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << to_csv(table);
        out.flush();
        if (!out) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace spinchannel::expcli
