#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace clusterbench {

enum class Format { Csv, Json };

Format parse_format(std::string_view text);
std::string_view extension(Format f) noexcept;

/// Shortest text that round-trips the double; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

/// Column-ordered table whose cells are JSON scalars. Serialized either as CSV with a
/// header row or as a JSON array of objects keyed by column name.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    std::size_t column(std::string_view name) const; // throws Error(Input) if absent

    std::string to_csv() const;
    nlohmann::ordered_json to_json() const;
};

void write_text(const std::filesystem::path& path, std::string_view text);
void write_table(const std::filesystem::path& path, const Table& table, Format format);

/// Reads CSV, or a JSON array of objects when the extension is ".json". CSV cells come back as strings.
Table read_table(const std::filesystem::path& path);
Table parse_csv(std::string_view text);

double cell_number(const nlohmann::json& cell, std::string_view what);
std::uint64_t cell_unsigned(const nlohmann::json& cell, std::string_view what);
bool cell_bool(const nlohmann::json& cell, std::string_view what);

} // namespace clusterbench
