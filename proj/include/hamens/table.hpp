#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamens/scenario.hpp"

namespace hamens {

/// Rectangular numeric table with optional (missing) cells and a JSON
/// metadata block. This is the unit of CLI output.
struct Table
{
    using Cell = std::optional<double>;

    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta = nlohmann::json::object();

    std::size_t column_index(const std::string& name) const;
    std::vector<Cell> column(const std::string& name) const;
    void append(std::vector<Cell> row);

    bool operator==(const Table&) const = default;
};

/// 17 significant digits, enough to round-trip every double.
std::string format_double(double v);

/// CSV layout: optional first line "# <meta json>", then a header row, then
/// one row per record. Missing cells are empty fields.
void write_csv(const Table& table, std::ostream& os);
Table read_csv(std::istream& is);

/// {"meta": {...}, "columns": [...], "rows": [[...], ...]} with null for
/// missing cells.
void write_json(const Table& table, std::ostream& os);
Table read_json(std::istream& is);

/// Time column "t" followed by the trajectory columns, each renamed with
/// `suffix` (e.g. "_mc").
Table to_table(const Trajectory& traj, const std::string& suffix = "");

} // namespace hamens
