#include "hamens/table.hpp"

#include <cstdlib>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hamens {

std::size_t Table::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw std::out_of_range("table has no column '" + name + "'");
}

std::vector<Table::Cell> Table::column(const std::string& name) const
{
    const std::size_t idx = column_index(name);
    std::vector<Cell> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[idx]);
    return out;
}

void Table::append(std::vector<Cell> row)
{
    if (row.size() != header.size())
        throw std::invalid_argument("row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const Table& table, std::ostream& os)
{
    if (!table.meta.empty())
        os << "# " << table.meta.dump() << '\n';
    for (std::size_t i = 0; i < table.header.size(); ++i)
        os << (i ? "," : "") << table.header[i];
    os << '\n';
    for (const auto& row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                os << ',';
            if (row[i])
                os << format_double(*row[i]);
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

Table::Cell parse_cell(const std::string& field)
{
    if (field.empty())
        return std::nullopt;
    // strtod rather than from_chars: libstdc++ 11 lacks floating from_chars.
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw std::invalid_argument("malformed numeric field '" + field + "'");
    return v;
}

} // namespace

Table read_csv(std::istream& is)
{
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.rfind("# ", 0) == 0 && !have_header)
        {
            t.meta = nlohmann::json::parse(line.substr(2));
            continue;
        }
        if (line.empty())
            continue;
        if (!have_header)
        {
            t.header = split(line, ',');
            have_header = true;
            continue;
        }
        const auto fields = split(line, ',');
        std::vector<Table::Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields)
            row.push_back(parse_cell(f));
        t.append(std::move(row));
    }
    if (!have_header)
        throw std::invalid_argument("CSV input has no header row");
    return t;
}

void write_json(const Table& table, std::ostream& os)
{
    nlohmann::json doc;
    doc["meta"] = table.meta;
    doc["columns"] = table.header;
    auto rows = nlohmann::json::array();
    for (const auto& r : table.rows)
    {
        auto jr = nlohmann::json::array();
        for (const auto& c : r)
            jr.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
        rows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(1) << '\n';
}

Table read_json(std::istream& is)
{
    const auto doc = nlohmann::json::parse(is);
    Table t;
    t.meta = doc.at("meta");
    t.header = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : doc.at("rows"))
    {
        std::vector<Table::Cell> row;
        for (const auto& c : jr)
            row.push_back(c.is_null() ? Table::Cell{} : Table::Cell{c.get<double>()});
        t.append(std::move(row));
    }
    return t;
}

Table to_table(const Trajectory& traj, const std::string& suffix)
{
    Table t;
    t.header.push_back("t");
    for (const auto& c : traj.columns())
        t.header.push_back(c.name.ends_with("_se")
                               ? c.name.substr(0, c.name.size() - 3) + suffix + "_se"
                               : c.name + suffix);
    for (std::size_t i = 0; i < traj.grid().size(); ++i)
    {
        std::vector<Table::Cell> row{traj.grid()[i]};
        for (const auto& c : traj.columns())
            row.push_back(c.values[i]);
        t.append(std::move(row));
    }
    return t;
}

} // namespace hamens
