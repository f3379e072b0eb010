// SPDX-License-Identifier: Apache-2.0
#include "nandsim/csv.hpp"
#include "nandsim/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nandsim {

void CsvTable::add(std::vector<std::string> row)
{
    if (row.size() != columns_.size())
        throw std::invalid_argument("CSV row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string CsvTable::render(const std::string &config_hash, std::uint64_t seed) const
{
    std::ostringstream os;
    os << "# config_hash=" << config_hash << " seed=" << seed << "\n";
    auto line = [&os](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << "\n";
    };
    line(columns_);
    for (const auto &r : rows_)
        line(r);
    return os.str();
}

void CsvTable::write(const std::string &path, const std::string &config_hash, std::uint64_t seed) const
{
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << render(config_hash, seed);
}

CsvTable CsvTable::read(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError(path + ": cannot open file");
    std::string line;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    auto split = [](const std::string &s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            out.push_back(cell);
        return out;
    };
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        auto cells = split(line);
        if (header.empty()) {
            header = std::move(cells);
            continue;
        }
        if (cells.size() != header.size())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": row width does not match the header");
        rows.push_back(std::move(cells));
    }
    if (header.empty())
        throw ConfigError(path + ": no header row");
    CsvTable t(header);
    t.rows_ = std::move(rows);
    return t;
}

} // namespace nandsim
