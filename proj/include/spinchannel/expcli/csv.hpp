// csv.hpp — Result tables and their bit-stable CSV serialization

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace spinchannel::expcli {

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

// Column-named rows. add() rejects rows of the wrong width and rows holding a
// non-finite number, so a table never carries NaN or ±inf.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    void add(Row row);
    void append(const Table& other); // columns must match

    double number(std::size_t row, const std::string& column) const;

    // Copy keeping only the named columns, in the given order.
    Table select(const std::vector<std::string>& columns) const;

private:
    std::vector<std::string> columns_;
    std::vector<Row> rows_;
};

// 15 significant digits, '.' decimal point, no locale; -0 prints as 0.
std::string format_number(double value);

// Header row then one line per row, comma-separated, LF endings. String cells
// containing a comma, quote or newline are quoted.
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

// Writes through a temporary file and renames it into place; creates parent
// directories. Throws std::runtime_error on I/O failure.
void write_csv_file(const std::filesystem::path& path, const Table& table);

} // namespace spinchannel::expcli
