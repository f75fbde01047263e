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

#pragma once

#include "fasc/random.hpp"
#include "fasc/system_config.hpp"

#include <string>
#include <vector>

namespace fasc
{

// One propagation path seen from an array origin.
struct PathGeometry
{
    double theta = 0.0;    // elevation, radians in [-pi/2, pi/2]
    double phi = 0.0;      // azimuth, radians in [0, 2pi]; carried but unused by the 1-D geometry
    double distance = 1.0; // scatterer distance to the origin, meters
};

// One random draw of transmit/receive path angles and scatterer distances.
struct ScenarioSample
{
    std::vector<PathGeometry> tx_paths;
    std::vector<PathGeometry> rx_paths;

    void validate(const SystemConfig &cfg) const;
};

// Uniform angles, uniform distances on cfg.scatterer_dist_range.
ScenarioSample sample_scenario(const SystemConfig &cfg, Rng &rng);

// Sorted distinct activated-port indices, 1-based.
class PortSelection
{
public:
    PortSelection() = default; // empty selection
    PortSelection(std::vector<int> ports, int m_ports);

    // m_active indices spread evenly across {1..M}; the center port when m_active == 1.
    static PortSelection evenly_spaced(int m_active, int m_ports);

    // Uniformly random valid selection.
    static PortSelection random(int m_active, int m_ports, Rng &rng);

    const std::vector<int> &ports() const { return ports_; }
    int size() const { return static_cast<int>(ports_.size()); }
    int operator[](int i) const { return ports_[static_cast<std::size_t>(i)]; }
    int m_ports() const { return m_ports_; }
    bool contains(int port) const;

    // "1;9;18"
    std::string to_string() const;
    static PortSelection parse(const std::string &text, int m_ports);

    friend bool operator==(const PortSelection &a, const PortSelection &b) { return a.ports_ == b.ports_; }

private:
    std::vector<int> ports_;
    int m_ports_ = 0;
};

} // namespace fasc
