#include "ptcross/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ptcross/core.hpp"

namespace ptcross {

void Table::add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
}

void Table::add_meta(std::string key, double value) {
    meta.emplace_back(std::move(key), format_double(value));
}

const std::string& Table::meta_value(const std::string& key) const {
    for (const auto& [k, v] : meta) {
        if (k == key) {
            return v;
        }
    }
    throw Error("table has no metadata key '" + key + "'");
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw Error("table has no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& column) const {
    const Cell& c = rows.at(row).at(column_index(column));
    if (const double* d = std::get_if<double>(&c)) {
        return *d;
    }
    throw Error("column '" + column + "' is not numeric");
}

Format format_from_string(const std::string& s) {
    if (s == "csv" || s == "CSV") return Format::CSV;
    if (s == "json" || s == "JSON") return Format::JSON;
    throw UsageError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) {
        return false;
    }
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno != ERANGE;
}

Cell infer_cell(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    double d = 0.0;
    if (parse_double(s, d)) return d;
    return s;
}

std::string csv_field(const std::string& s, bool force_quotes) {
    const bool needs = force_quotes || s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(c);
    // Quote strings that would otherwise read back as a number or boolean.
    const bool ambiguous = !s.empty() && !std::holds_alternative<std::string>(infer_cell(s));
    return csv_field(s, ambiguous);
}

// Splits one CSV record; quoted fields are returned as strings, others inferred.
std::vector<Cell> parse_record(const std::string& line, bool infer) {
    std::vector<Cell> out;
    std::size_t i = 0;
    while (true) {
        std::string field;
        bool quoted = false;
        if (i < line.size() && line[i] == '"') {
            quoted = true;
            ++i;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                field += line[i++];
            }
        }
        while (i < line.size() && line[i] != ',') {
            field += line[i++];
        }
        if (quoted || !infer) {
            out.emplace_back(field);
        } else {
            out.push_back(infer_cell(field));
        }
        if (i >= line.size()) {
            break;
        }
        ++i;  // comma
    }
    return out;
}

std::string json_string(const std::string& s) {
    return nlohmann::json(s).dump();
}

std::string json_cell(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        return std::isfinite(*d) ? format_double(*d) : "null";
    }
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return json_string(std::get<std::string>(c));
}

} // namespace

void write_csv(std::ostream& out, const Table& t) {
    for (const auto& [k, v] : t.meta) {
        out << "# " << k << ": " << v << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << csv_field(t.columns[i], false);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t) {
    out << "{\n  \"meta\": {";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        out << (i ? "," : "") << "\n    " << json_string(t.meta[i].first) << ": " << json_string(t.meta[i].second);
    }
    out << (t.meta.empty() ? "" : "\n  ") << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? ", " : "") << json_string(t.columns[i]);
    }
    out << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << (r ? "," : "") << "\n    {";
        const auto& row = t.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? ", " : "") << json_string(t.columns.at(i)) << ": " << json_cell(row[i]);
        }
        out << "}";
    }
    out << (t.rows.empty() ? "" : "\n  ") << "]\n}\n";
}

void write_table(std::ostream& out, const Table& t, Format f) {
    if (f == Format::CSV) {
        write_csv(out, t);
    } else {
        write_json(out, t);
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!have_header && line.rfind("# ", 0) == 0) {
            const auto sep = line.find(": ", 2);
            if (sep == std::string::npos) {
                throw Error("malformed CSV metadata line: " + line);
            }
            t.add_meta(line.substr(2, sep - 2), line.substr(sep + 2));
            continue;
        }
        if (!have_header) {
            for (const auto& c : parse_record(line, false)) {
                t.columns.push_back(std::get<std::string>(c));
            }
            have_header = true;
            continue;
        }
        if (line.empty() && t.columns.size() != 1) {
            continue;
        }
        auto row = parse_record(line, true);
        if (row.size() != t.columns.size()) {
            throw Error("CSV row has " + std::to_string(row.size()) + " fields, expected " +
                        std::to_string(t.columns.size()));
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw Error("CSV input has no header row");
    }
    return t;
}

Table read_json(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed JSON table: ") + e.what());
    }
    Table t;
    for (const auto& [k, v] : doc.at("meta").items()) {
        t.add_meta(k, v.get<std::string>());
    }
    for (const auto& c : doc.at("columns")) {
        t.columns.push_back(c.get<std::string>());
    }
    for (const auto& jrow : doc.at("rows")) {
        std::vector<Cell> row;
        for (const auto& col : t.columns) {
            const auto& v = jrow.at(col);
            if (v.is_boolean()) {
                row.emplace_back(v.get<bool>());
            } else if (v.is_number()) {
                row.emplace_back(v.get<double>());
            } else if (v.is_null()) {
                row.emplace_back(std::nan(""));
            } else {
                row.emplace_back(v.get<std::string>());
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read_table(const std::string& text) {
    std::istringstream in(text);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return read_json(in);
    }
    return read_csv(in);
}

} // namespace ptcross
