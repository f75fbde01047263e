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

#include "fasc/config_file.hpp"
#include "fasc/output.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fasc
{

namespace
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string &value)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ','))
        items.push_back(trim(item));
    if (items.size() == 1 && items[0].empty())
        items.clear();
    return items;
}

double parse_real(const std::string &key, const std::string &text)
{
    double value = 0.0;
    const char *begin = text.data(), *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    return value;
}

template <typename Int>
Int parse_integer(const std::string &key, const std::string &text)
{
    Int value = 0;
    const char *begin = text.data(), *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return value;
}

std::vector<LoadSegment> parse_load_model(const std::string &value)
{
    std::vector<LoadSegment> segments;
    std::size_t pos = 0;
    while (pos < value.size())
    {
        const char c = value[pos];
        if (c == ' ' || c == '\t' || c == ',')
        {
            ++pos;
            continue;
        }
        if (c != '(')
            throw ConfigError("load_model: expected '(' at position " + std::to_string(pos));
        const auto close = value.find(')', pos);
        if (close == std::string::npos)
            throw ConfigError("load_model: unterminated '('");
        const auto parts = split_list(value.substr(pos + 1, close - pos - 1));
        if (parts.size() != 3)
            throw ConfigError("load_model: each segment needs exactly three values (A, B, D)");
        segments.push_back({parse_real("load_model", parts[0]), parse_real("load_model", parts[1]),
                            parse_real("load_model", parts[2])});
        pos = close + 1;
    }
    if (segments.empty())
        throw ConfigError("load_model: no segments given");
    return segments;
}

using Setter = std::function<void(ExperimentConfig &, const std::string &, const std::string &)>;

const std::map<std::string, Setter> &setters()
{
    auto int_field = [](int SystemConfig::*field)
    {
        return [field](ExperimentConfig &c, const std::string &k, const std::string &v)
        { c.system.*field = parse_integer<int>(k, v); };
    };
    auto real_field = [](double SystemConfig::*field)
    {
        return [field](ExperimentConfig &c, const std::string &k, const std::string &v)
        { c.system.*field = parse_real(k, v); };
    };

    static const std::map<std::string, Setter> table = {
        {"n_tx", int_field(&SystemConfig::n_tx)},
        {"m_ports", int_field(&SystemConfig::m_ports)},
        {"m_active", int_field(&SystemConfig::m_active)},
        {"wavelength", real_field(&SystemConfig::wavelength)},
        {"d_bs", real_field(&SystemConfig::d_bs)},
        {"d_u", real_field(&SystemConfig::d_u)},
        {"v_tx_paths", int_field(&SystemConfig::v_tx_paths)},
        {"v_rx_paths", int_field(&SystemConfig::v_rx_paths)},
        {"noise_power", real_field(&SystemConfig::noise_power)},
        {"path_gain_var", real_field(&SystemConfig::path_gain_var)},
        {"p_max", real_field(&SystemConfig::p_max)},
        {"p0", real_field(&SystemConfig::p0)},
        {"eps1", real_field(&SystemConfig::eps1)},
        {"eps2", real_field(&SystemConfig::eps2)},
        {"mc_samples", int_field(&SystemConfig::mc_samples)},
        {"scatterer_dist_range",
         [](ExperimentConfig &c, const std::string &k, const std::string &v)
         {
             const auto items = split_list(v);
             if (items.size() != 2)
                 throw ConfigError(k + ": expected 'lo, hi'");
             c.system.scatterer_dist_range = {parse_real(k, items[0]), parse_real(k, items[1])};
         }},
        {"rng_seed", [](ExperimentConfig &c, const std::string &k, const std::string &v)
         { c.system.rng_seed = parse_integer<std::uint64_t>(k, v); }},
        {"path_diff_mode", [](ExperimentConfig &c, const std::string &, const std::string &v)
         { c.system.path_diff_mode = parse_path_diff_mode(v); }},
        {"path_response", [](ExperimentConfig &c, const std::string &, const std::string &v)
         { c.system.path_response = parse_path_response_model(v); }},
        {"load_model", [](ExperimentConfig &c, const std::string &, const std::string &v)
         { c.load_model = LoadModel(parse_load_model(v)); }},
        {"schemes",
         [](ExperimentConfig &c, const std::string &, const std::string &v)
         {
             c.schemes.clear();
             for (const auto &item : split_list(v))
                 c.schemes.push_back(parse_scheme(item));
         }},
        {"snr_db_list",
         [](ExperimentConfig &c, const std::string &k, const std::string &v)
         {
             c.snr_db_list.clear();
             for (const auto &item : split_list(v))
                 c.snr_db_list.push_back(parse_real(k, item));
         }},
        {"n_trials", [](ExperimentConfig &c, const std::string &k, const std::string &v)
         { c.n_trials = parse_integer<int>(k, v); }},
        {"out_dir", [](ExperimentConfig &c, const std::string &, const std::string &v) { c.out_dir = v; }},
    };
    return table;
}

} // namespace

ExperimentConfig parse_experiment_config(std::string_view text)
{
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        try
        {
            it->second(cfg, key, value);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_experiment_config(buf.str());
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string format_experiment_config(const ExperimentConfig &cfg)
{
    const auto &s = cfg.system;
    std::ostringstream out;
    out << "n_tx = " << s.n_tx << '\n'
        << "m_ports = " << s.m_ports << '\n'
        << "m_active = " << s.m_active << '\n'
        << "wavelength = " << format_real(s.wavelength) << '\n'
        << "d_bs = " << format_real(s.d_bs) << '\n'
        << "d_u = " << format_real(s.d_u) << '\n'
        << "v_tx_paths = " << s.v_tx_paths << '\n'
        << "v_rx_paths = " << s.v_rx_paths << '\n'
        << "noise_power = " << format_real(s.noise_power) << '\n'
        << "path_gain_var = " << format_real(s.path_gain_var) << '\n'
        << "p_max = " << format_real(s.p_max) << '\n'
        << "p0 = " << format_real(s.p0) << '\n'
        << "eps1 = " << format_real(s.eps1) << '\n'
        << "eps2 = " << format_real(s.eps2) << '\n'
        << "mc_samples = " << s.mc_samples << '\n'
        << "scatterer_dist_range = " << format_real(s.scatterer_dist_range.lo) << ", "
        << format_real(s.scatterer_dist_range.hi) << '\n'
        << "rng_seed = " << s.rng_seed << '\n'
        << "path_diff_mode = " << to_string(s.path_diff_mode) << '\n'
        << "path_response = " << to_string(s.path_response) << '\n';

    out << "load_model = ";
    for (std::size_t i = 0; i < cfg.load_model.segments().size(); ++i)
    {
        const auto &seg = cfg.load_model.segments()[i];
        out << (i ? ", " : "") << '(' << format_real(seg.slope) << ", " << format_real(seg.intercept) << ", "
            << format_real(seg.lower_break) << ')';
    }
    out << "\nschemes = ";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        out << (i ? ", " : "") << to_string(cfg.schemes[i]);
    out << "\nsnr_db_list = ";
    for (std::size_t i = 0; i < cfg.snr_db_list.size(); ++i)
        out << (i ? ", " : "") << format_real(cfg.snr_db_list[i]);
    out << "\nn_trials = " << cfg.n_trials << '\n' << "out_dir = " << cfg.out_dir << '\n';
    return out.str();
}

} // namespace fasc
