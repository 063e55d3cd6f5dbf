#include "clusterbench/table.hpp"

#include "clusterbench/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace clusterbench {

using nlohmann::json;

Format parse_format(std::string_view text)
{
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "json") {
        return Format::Json;
    }
    fail(ErrorKind::Config, "format: expected csv or json, got '" + std::string(text) + "'");
}

std::string_view extension(Format f) noexcept { return f == Format::Csv ? ".csv" : ".json"; }

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::size_t Table::column(std::string_view name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    fail(ErrorKind::Input, "missing column '" + std::string(name) + "'");
}

namespace {

std::string csv_cell(const json& cell)
{
    if (cell.is_null()) {
        return {};
    }
    if (cell.is_boolean()) {
        return cell.get<bool>() ? "true" : "false";
    }
    if (cell.is_number_unsigned()) {
        return std::to_string(cell.get<std::uint64_t>());
    }
    if (cell.is_number_integer()) {
        return std::to_string(cell.get<std::int64_t>());
    }
    if (cell.is_number_float()) {
        return format_number(cell.get<double>());
    }
    std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
    if (text.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : text) {
            quoted += ch;
            if (ch == '"') {
                quoted += '"';
            }
        }
        return quoted + "\"";
    }
    return text;
}

// JSON has no infinity; non-finite doubles are written as strings.
json json_cell(const json& cell)
{
    if (cell.is_number_float() && !std::isfinite(cell.get<double>())) {
        return format_number(cell.get<double>());
    }
    return cell;
}

} // namespace

std::string Table::to_csv() const
{
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += (i ? "," : "") + columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json Table::to_json() const
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
            obj[columns[i]] = json_cell(row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        fail(ErrorKind::Io, "write failed for " + path.string());
    }
}

void write_table(const std::filesystem::path& path, const Table& table, Format format)
{
    if (format == Format::Csv) {
        write_text(path, table.to_csv());
    } else {
        write_text(path, table.to_json().dump(2) + "\n");
    }
}

Table parse_csv(std::string_view text)
{
    Table t;
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            if (any || !field.empty()) {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            record.clear();
            field.clear();
            any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (quoted) {
        fail(ErrorKind::Input, "unterminated quoted CSV field");
    }
    if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) {
        fail(ErrorKind::Input, "CSV input has no header row");
    }
    t.columns = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.columns.size()) {
            fail(ErrorKind::Input, "CSV row " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                                       " fields, header has " + std::to_string(t.columns.size()));
        }
        std::vector<json> row;
        row.reserve(records[r].size());
        for (auto& f : records[r]) {
            row.emplace_back(std::move(f));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read_table(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Input, "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    if (path.extension() != ".json") {
        return parse_csv(text);
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Input, path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) {
        fail(ErrorKind::Input, path.string() + ": expected a JSON array of row objects");
    }
    Table t;
    for (const auto& obj : doc) {
        if (!obj.is_object()) {
            fail(ErrorKind::Input, path.string() + ": every row must be an object");
        }
        if (t.columns.empty()) {
            for (const auto& [key, _] : obj.items()) {
                t.columns.push_back(key);
            }
        }
        std::vector<json> row;
        for (const auto& col : t.columns) {
            if (!obj.contains(col)) {
                fail(ErrorKind::Input, path.string() + ": row is missing '" + col + "'");
            }
            row.push_back(obj.at(col));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

double cell_number(const json& cell, std::string_view what)
{
    if (cell.is_number()) {
        return cell.get<double>();
    }
    if (cell.is_string()) {
        const auto& s = cell.get_ref<const std::string&>();
        if (s == "inf") {
            return INFINITY;
        }
        double value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc{} && ptr == s.data() + s.size()) {
            return value;
        }
    }
    fail(ErrorKind::Input, std::string(what) + ": expected a number, got '" +
                               (cell.is_string() ? cell.get<std::string>() : cell.dump()) + "'");
}

std::uint64_t cell_unsigned(const json& cell, std::string_view what)
{
    if (cell.is_number_unsigned()) {
        return cell.get<std::uint64_t>();
    }
    if (cell.is_string()) {
        const auto& s = cell.get_ref<const std::string&>();
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc{} && ptr == s.data() + s.size()) {
            return value;
        }
    }
    fail(ErrorKind::Input, std::string(what) + ": expected a non-negative integer, got '" +
                               (cell.is_string() ? cell.get<std::string>() : cell.dump()) + "'");
}

bool cell_bool(const json& cell, std::string_view what)
{
    if (cell.is_boolean()) {
        return cell.get<bool>();
    }
    if (cell.is_string()) {
        const auto& s = cell.get_ref<const std::string&>();
        if (s == "true" || s == "1") {
            return true;
        }
        if (s == "false" || s == "0") {
            return false;
        }
    }
    fail(ErrorKind::Input, std::string(what) + ": expected true or false");
}

} // namespace clusterbench
