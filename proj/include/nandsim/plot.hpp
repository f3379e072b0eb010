// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/csv.hpp"

#include <string>
#include <vector>

namespace nandsim {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

std::string svg_line_chart(const std::string &title, const std::string &x_label, const std::string &y_label,
                           const std::vector<Series> &series, bool log_y);
std::string svg_bar_chart(const std::string &title, const std::string &y_label,
                          const std::vector<std::string> &labels, const std::vector<double> &values);

// Recognizes sweep, lifetime and lifetime-curve CSVs; returns the files written.
// Throws ConfigError on any other schema.
std::vector<std::string> emit_plots(const std::string &csv_path, const std::string &out_dir);

} // namespace nandsim
