// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nandsim {

// Rows of string cells; numbers go through num() so output is byte-stable.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add(std::vector<std::string> row);
    const std::vector<std::string> &columns() const { return columns_; }
    const std::vector<std::vector<std::string>> &rows() const { return rows_; }

    // First line: "# config_hash=<hash> seed=<seed>", then the column header.
    std::string render(const std::string &config_hash, std::uint64_t seed) const;
    void write(const std::string &path, const std::string &config_hash, std::uint64_t seed) const;

    static std::string num(double v);
    static CsvTable read(const std::string &path);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace nandsim
