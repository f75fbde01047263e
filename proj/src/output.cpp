// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fasc/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fasc
{

std::string format_real(double value)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("format_real: conversion failed");
    return std::string(buf.data(), ptr);
}

void write_sweep_csv(std::ostream &out, const std::vector<RunRecord> &records)
{
    out << "scheme,snr_db,trial,rate,rho,trace_q,ports,outer_iterations\n";
    for (const auto &r : records)
        out << to_string(r.scheme) << ',' << format_real(r.snr_db) << ',' << r.trial << ',' << format_real(r.rate)
            << ',' << format_real(r.rho) << ',' << format_real(r.trace_q) << ',' << r.ports.to_string() << ','
            << r.outer_iterations << '\n';
}

void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows)
{
    out << "scheme,snr_db,mean_rate,std_rate,n_trials\n";
    for (const auto &r : rows)
        out << to_string(r.scheme) << ',' << format_real(r.snr_db) << ',' << format_real(r.mean_rate) << ','
            << format_real(r.std_rate) << ',' << r.n_trials << '\n';
}

void write_convergence_csv(std::ostream &out, const std::vector<ConvergenceTrace> &traces)
{
    out << "snr_db,outer_iteration,objective\n";
    for (const auto &t : traces)
        for (const auto &p : t.points)
            out << format_real(t.snr_db) << ',' << p.outer_iteration << ',' << format_real(p.objective) << '\n';
}

RunRecord parse_sweep_row(const std::string &line, int m_ports)
{
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (fields.size() != 8)
        throw std::invalid_argument("sweep row: expected 8 fields, got " + std::to_string(fields.size()));

    auto real = [](const std::string &s)
    {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("sweep row: bad number '" + s + "'");
        return v;
    };
    auto integer = [](const std::string &s)
    {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("sweep row: bad integer '" + s + "'");
        return v;
    };

    RunRecord r;
    r.scheme = parse_scheme(fields[0]);
    r.snr_db = real(fields[1]);
    r.trial = integer(fields[2]);
    r.rate = real(fields[3]);
    r.rho = real(fields[4]);
    r.trace_q = real(fields[5]);
    r.ports = PortSelection::parse(fields[6], m_ports);
    r.outer_iterations = integer(fields[7]);
    return r;
}

// ---------- SVG ----------

namespace
{

struct Series
{
    std::string label;
    std::vector<double> x, y;
};

constexpr std::array<const char *, 6> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string line_chart(const std::string &title, const std::string &x_label, const std::string &y_label,
                       const std::vector<Series> &series)
{
    constexpr double width = 640, height = 420, left = 70, right = 170, top = 40, bottom = 60;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool first = true;
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
        {
            if (first)
            {
                x_lo = x_hi = s.x[i];
                y_lo = y_hi = s.y[i];
                first = false;
            }
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    y_lo = std::min(y_lo, 0.0);
    if (x_hi == x_lo)
        x_hi = x_lo + 1;
    if (y_hi == y_lo)
        y_hi = y_lo + 1;
    y_hi += 0.05 * (y_hi - y_lo);

    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg.setf(std::ios::fixed);
    svg.precision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << left + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n"
        << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    for (int t = 0; t <= ticks; ++t)
    {
        const double xv = x_lo + (x_hi - x_lo) * t / ticks;
        const double yv = y_lo + (y_hi - y_lo) * t / ticks;
        svg << "<line x1=\"" << px(xv) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(xv) << "\" y2=\""
            << top + plot_h + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
            << format_real(std::round(xv * 100) / 100) << "</text>\n"
            << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left + plot_w << "\" y2=\""
            << py(yv) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
            << format_real(std::round(yv * 100) / 100) << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n"
        << "<text transform=\"translate(18," << top + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k)
    {
        const auto &s = series[k];
        const char *color = palette[k % palette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        svg << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 32
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace

std::string convergence_svg(const std::vector<ConvergenceTrace> &traces)
{
    std::vector<Series> series;
    for (const auto &t : traces)
    {
        Series s{"SNR " + format_real(t.snr_db) + " dB", {}, {}};
        for (const auto &p : t.points)
        {
            s.x.push_back(p.outer_iteration);
            s.y.push_back(p.objective);
        }
        series.push_back(std::move(s));
    }
    return line_chart("Equivalent rate versus outer iteration", "outer iteration", "equivalent rate (bit/s/Hz)",
                      series);
}

std::string snr_rate_svg(const std::vector<SummaryRow> &rows)
{
    std::vector<Series> series;
    for (auto scheme : all_schemes)
    {
        Series s{to_string(scheme), {}, {}};
        for (const auto &r : rows)
            if (r.scheme == scheme)
            {
                s.x.push_back(r.snr_db);
                s.y.push_back(r.mean_rate);
            }
        if (!s.x.empty())
            series.push_back(std::move(s));
    }
    return line_chart("Mean equivalent rate versus SNR", "SNR (dB)", "equivalent rate (bit/s/Hz)", series);
}

std::vector<std::filesystem::path> emit_outputs(const std::vector<RunRecord> &records,
                                                const std::vector<ConvergenceTrace> &traces,
                                                const std::filesystem::path &out_dir, bool plots)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

    const auto summary = summarize(records);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string &name, const std::string &content)
    {
        const auto path = out_dir / name;
        write_file(path, content);
        written.push_back(path);
    };

    std::ostringstream sweep, summary_csv, convergence;
    write_sweep_csv(sweep, records);
    write_summary_csv(summary_csv, summary);
    write_convergence_csv(convergence, traces);
    emit("sweep.csv", sweep.str());
    emit("summary.csv", summary_csv.str());
    emit("convergence.csv", convergence.str());
    if (plots)
    {
        emit("fig_convergence.svg", convergence_svg(traces));
        emit("fig_snr_rate.svg", snr_rate_svg(summary));
    }
    return written;
}

} // namespace fasc
