// SPDX-License-Identifier: Apache-2.0
#include "nandsim/plot.hpp"
#include "nandsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace nandsim {

namespace {

constexpr double kW = 640, kH = 400, kL = 80, kR = 150, kT = 40, kB = 50;
const char *const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string f2(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

std::string tick(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%g", v);
    return b;
}

std::string escape(const std::string &s)
{
    std::string o;
    for (char c : s) {
        if (c == '<')
            o += "&lt;";
        else if (c == '>')
            o += "&gt;";
        else if (c == '&')
            o += "&amp;";
        else
            o += c;
    }
    return o;
}

void header(std::ostringstream &os, const std::string &title)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << f2(kW / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n"
       << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\"" << kH - kB
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
       << "\" stroke=\"black\"/>\n";
}

double parse(const std::string &path, const std::string &s)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ConfigError(path + ": not a number: '" + s + "'");
    }
}

int column(const CsvTable &t, const std::string &name)
{
    const auto &c = t.columns();
    return static_cast<int>(std::find(c.begin(), c.end(), name) - c.begin());
}

bool has_columns(const CsvTable &t, const std::vector<std::string> &want)
{
    return t.columns() == want;
}

std::vector<Series> group_series(const std::string &path, const CsvTable &t, const std::string &key,
                                 const std::string &xcol, const std::string &ycol)
{
    std::vector<Series> out;
    const int k = column(t, key), x = column(t, xcol), y = column(t, ycol);
    for (const auto &r : t.rows()) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Series &s) { return s.name == r[k]; });
        if (it == out.end()) {
            out.push_back({r[k], {}, {}});
            it = out.end() - 1;
        }
        it->x.push_back(parse(path, r[x]));
        it->y.push_back(parse(path, r[y]));
    }
    return out;
}

void write(const std::string &path, const std::string &body)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << body;
}

} // namespace

std::string svg_line_chart(const std::string &title, const std::string &x_label, const std::string &y_label,
                           const std::vector<Series> &series, bool log_y)
{
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    auto ty = [log_y](double v) { return log_y ? std::log10(std::max(v, 1e-12)) : v; };
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    if (x0 > x1) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (log_y) {
        y0 = std::floor(y0);
        y1 = std::ceil(y1);
    }
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0)
        y1 = y0 + 1;
    auto px = [&](double v) { return kL + (v - x0) / (x1 - x0) * (kW - kL - kR); };
    auto py = [&](double v) { return kH - kB - (ty(v) - y0) / (y1 - y0) * (kH - kT - kB); };

    std::ostringstream os;
    header(os, title);
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4;
        os << "<text x=\"" << f2(px(xv)) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">" << tick(xv)
           << "</text>\n";
    }
    const int ny = log_y ? static_cast<int>(y1 - y0) : 4;
    for (int i = 0; i <= ny; ++i) {
        const double yl = y0 + (y1 - y0) * i / ny;
        const double yv = log_y ? std::pow(10.0, yl) : yl;
        os << "<text x=\"" << kL - 6 << "\" y=\"" << f2(py(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << f2((kL + kW - kR) / 2) << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n"
       << "<text x=\"16\" y=\"" << f2((kT + kH - kB) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << f2((kT + kH - kB) / 2) << ")\">" << escape(y_label) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char *color = kColors[k % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[k].x.size(); ++i)
            os << (i ? " " : "") << f2(px(series[k].x[i])) << "," << f2(py(series[k].y[i]));
        os << "\"/>\n";
        const double ly = kT + 16 * k + 10;
        os << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << f2(ly) << "\" x2=\"" << kW - kR + 30 << "\" y2=\""
           << f2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << kW - kR + 34 << "\" y=\"" << f2(ly + 4) << "\">" << escape(series[k].name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_bar_chart(const std::string &title, const std::string &y_label,
                          const std::vector<std::string> &labels, const std::vector<double> &values)
{
    double top = 0.0;
    for (double v : values)
        top = std::max(top, v);
    if (top <= 0.0)
        top = 1.0;
    std::ostringstream os;
    header(os, title);
    const double slot = (kW - kL - kR) / std::max<std::size_t>(1, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double h = values[i] / top * (kH - kT - kB);
        const double x = kL + slot * i + slot * 0.15;
        os << "<rect x=\"" << f2(x) << "\" y=\"" << f2(kH - kB - h) << "\" width=\"" << f2(slot * 0.7)
           << "\" height=\"" << f2(h) << "\" fill=\"" << kColors[i % std::size(kColors)] << "\"/>\n"
           << "<text x=\"" << f2(x + slot * 0.35) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
           << escape(labels[i]) << "</text>\n"
           << "<text x=\"" << f2(x + slot * 0.35) << "\" y=\"" << f2(kH - kB - h - 4)
           << "\" text-anchor=\"middle\">" << tick(values[i]) << "</text>\n";
    }
    os << "<text x=\"16\" y=\"" << f2((kT + kH - kB) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << f2((kT + kH - kB) / 2) << ")\">" << escape(y_label) << "</text>\n</svg>\n";
    return os.str();
}

std::vector<std::string> emit_plots(const std::string &csv_path, const std::string &out_dir)
{
    const CsvTable t = CsvTable::read(csv_path);
    std::filesystem::create_directories(out_dir);
    const std::string stem = (std::filesystem::path(out_dir) / std::filesystem::path(csv_path).stem()).string();
    std::vector<std::string> written;
    if (has_columns(t, {"pec", "policy", "avg_rber", "worst_rber", "seed"})) {
        const std::string a = stem + "_avg.svg", w = stem + "_worst.svg";
        write(a, svg_line_chart("Average RBER", "P/E cycles", "RBER",
                                group_series(csv_path, t, "policy", "pec", "avg_rber"), true));
        write(w, svg_line_chart("Worst-case RBER", "P/E cycles", "RBER",
                                group_series(csv_path, t, "policy", "pec", "worst_rber"), true));
        written = {a, w};
    } else if (has_columns(t, {"stack", "endurance_pec", "ratio", "rber_at_baseline_eol", "ecc_overhead",
                               "ecc_reduction"})) {
        std::vector<std::string> labels;
        std::vector<double> life, ecc;
        for (const auto &r : t.rows()) {
            labels.push_back(r[0]);
            life.push_back(parse(csv_path, r[1]));
            ecc.push_back(parse(csv_path, r[4]) * 100.0);
        }
        const std::string a = stem + "_endurance.svg", b = stem + "_ecc.svg";
        write(a, svg_bar_chart("Endurance", "P/E cycles", labels, life));
        write(b, svg_bar_chart("Required ECC overhead at baseline end of life", "overhead (%)", labels, ecc));
        written = {a, b};
    } else if (has_columns(t, {"pec", "stack", "worst_rber"})) {
        const std::string a = stem + ".svg";
        write(a, svg_line_chart("Worst-case RBER by stack", "P/E cycles", "RBER",
                                group_series(csv_path, t, "stack", "pec", "worst_rber"), true));
        written = {a};
    } else {
        throw ConfigError(csv_path + ": schema mismatch; expected a sweep, lifetime or lifetime-curve CSV");
    }
    return written;
}

} // namespace nandsim
