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

#include "fasc/channel_model.hpp"

#include <cstdint>

namespace fasc
{

// Everything needed to score replacement candidates for one coordinate r_m.
struct PortScoreContext
{
    double gamma = 0.0;    // (alpha^2/sigma^2) tr(A Q A^H)
    CMatrix b_bar;         // V_r x (m_a - 1), selected columns except the m-th
    CMatrix inverse_core;  // (I + gamma B_bar B_bar^H)^{-1}, V_r x V_r
    std::vector<int> retained; // ports kept fixed while coordinate m is optimized
};

// Context for coordinate `position` (0-based) of the selection.
PortScoreContext make_port_context(const PortSelection &ports, int position, double gamma,
                                   const ScenarioSample &scenario, const SystemConfig &cfg);

// b^H(candidate) * inverse_core * b(candidate). Throws std::invalid_argument when the
// candidate collides with a retained port, std::out_of_range when outside {1..M}.
double per_port_score(int candidate, const PortScoreContext &ctx, const ScenarioSample &scenario,
                      const SystemConfig &cfg);

// One sweep m = 1..m_a, each coordinate replaced by its best-scoring admissible port.
// Ties keep the incumbent, then the smallest index. Output is re-sorted ascending.
PortSelection coordinate_pass(const PortSelection &ports, const TransmitCovariance &q, double rho,
                              const ScenarioSample &scenario, const SystemConfig &cfg);

inline constexpr int port_pass_cap = 50;

struct PortSearchResult
{
    PortSelection ports;
    double objective = 0.0; // equivalent-rate upper bound at the returned ports
    int passes = 0;
    bool converged = true;
};

// Repeats coordinate_pass until the selection stops changing or the gain drops
// below eps2, at most port_pass_cap passes.
PortSearchResult select_ports(const PortSelection &start, const TransmitCovariance &q, double rho,
                              const ScenarioSample &scenario, const SystemConfig &cfg);

struct ExhaustiveResult
{
    PortSelection ports;
    double rate = 0.0;
};

inline constexpr std::uint64_t exhaustive_guard = 1'000'000;

// Evaluates the bound on every valid selection and returns the lexicographically
// smallest argmax. Throws std::length_error when C(M, m_a) exceeds exhaustive_guard.
ExhaustiveResult exhaustive_best(const TransmitCovariance &q, double rho, const ScenarioSample &scenario,
                                 const SystemConfig &cfg);

std::uint64_t binomial(int n, int k);

} // namespace fasc
