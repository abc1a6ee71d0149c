#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ptcross {

using Cell = std::variant<double, bool, std::string>;

/// A metadata block plus a rectangular table of typed cells.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    // Throws Error when absent.
    [[nodiscard]] const std::string& meta_value(const std::string& key) const;
    [[nodiscard]] std::size_t column_index(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, const std::string& column) const;

    friend bool operator==(const Table&, const Table&) = default;
};

enum class Format {
    CSV,
    JSON,
};

Format format_from_string(const std::string& s);

/// printf("%.17g"); "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// `# key: value` metadata lines, one header row, RFC-4180 quoting.
void write_csv(std::ostream& out, const Table& t);
/// {"meta": {...}, "columns": [...], "rows": [{column: value, ...}, ...]}
void write_json(std::ostream& out, const Table& t);
void write_table(std::ostream& out, const Table& t, Format f);

// Numbers always come back as double.
Table read_csv(std::istream& in);
Table read_json(std::istream& in);
/// Detects the format from the first non-blank character.
Table read_table(const std::string& text);

} // namespace ptcross
