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

#include "fasc/scenario.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fasc
{

void ScenarioSample::validate(const SystemConfig &cfg) const
{
    if (static_cast<int>(tx_paths.size()) != cfg.v_tx_paths)
        throw std::invalid_argument("scenario: tx path count does not match v_tx_paths");
    if (static_cast<int>(rx_paths.size()) != cfg.v_rx_paths)
        throw std::invalid_argument("scenario: rx path count does not match v_rx_paths");
    auto positive = [](const PathGeometry &p) { return p.distance > 0.0; };
    if (!std::all_of(tx_paths.begin(), tx_paths.end(), positive) ||
        !std::all_of(rx_paths.begin(), rx_paths.end(), positive))
        throw std::invalid_argument("scenario: scatterer distances must be positive");
}

ScenarioSample sample_scenario(const SystemConfig &cfg, Rng &rng)
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    std::uniform_real_distribution<double> elevation(-half_pi, half_pi);
    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> distance(cfg.scatterer_dist_range.lo, cfg.scatterer_dist_range.hi);

    auto draw = [&](int count)
    {
        std::vector<PathGeometry> paths(static_cast<std::size_t>(count));
        for (auto &p : paths)
        {
            p.theta = elevation(rng);
            p.phi = azimuth(rng);
            p.distance = distance(rng);
        }
        return paths;
    };

    ScenarioSample s;
    s.tx_paths = draw(cfg.v_tx_paths);
    s.rx_paths = draw(cfg.v_rx_paths);
    return s;
}

PortSelection::PortSelection(std::vector<int> ports, int m_ports) : ports_(std::move(ports)), m_ports_(m_ports)
{
    if (ports_.empty())
        throw std::invalid_argument("port selection: at least one port is required");
    for (std::size_t i = 0; i < ports_.size(); ++i)
    {
        if (ports_[i] < 1 || ports_[i] > m_ports_)
            throw std::out_of_range("port selection: port " + std::to_string(ports_[i]) + " outside {1.." +
                                    std::to_string(m_ports_) + "}");
        if (i > 0 && ports_[i] <= ports_[i - 1])
            throw std::invalid_argument("port selection: ports must be strictly increasing");
    }
}

PortSelection PortSelection::evenly_spaced(int m_active, int m_ports)
{
    if (m_active < 1 || m_active > m_ports)
        throw std::invalid_argument("port selection: need 1 <= m_active <= m_ports");
    if (m_active == 1)
        return PortSelection({(m_ports + 1) / 2}, m_ports);
    std::vector<int> ports(static_cast<std::size_t>(m_active));
    for (int k = 0; k < m_active; ++k)
        ports[static_cast<std::size_t>(k)] = 1 + (k * (m_ports - 1)) / (m_active - 1);
    return PortSelection(std::move(ports), m_ports);
}

PortSelection PortSelection::random(int m_active, int m_ports, Rng &rng)
{
    if (m_active < 1 || m_active > m_ports)
        throw std::invalid_argument("port selection: need 1 <= m_active <= m_ports");
    std::vector<int> all(static_cast<std::size_t>(m_ports));
    std::iota(all.begin(), all.end(), 1);
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(m_active));
    std::sample(all.begin(), all.end(), std::back_inserter(picked), m_active, rng);
    return PortSelection(std::move(picked), m_ports);
}

bool PortSelection::contains(int port) const { return std::binary_search(ports_.begin(), ports_.end(), port); }

std::string PortSelection::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < ports_.size(); ++i)
    {
        if (i)
            out += ';';
        out += std::to_string(ports_[i]);
    }
    return out;
}

PortSelection PortSelection::parse(const std::string &text, int m_ports)
{
    std::vector<int> ports;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ';'))
    {
        std::size_t used = 0;
        int value = std::stoi(item, &used);
        if (used != item.size())
            throw std::invalid_argument("port selection: malformed entry '" + item + "'");
        ports.push_back(value);
    }
    return PortSelection(std::move(ports), m_ports);
}

} // namespace fasc
