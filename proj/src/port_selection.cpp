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

#include "fasc/port_selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fasc
{

namespace
{

// Precomputed per (scenario, Q) quantities reused across coordinates and passes.
struct Workspace
{
    CMatrix all_ports; // V_r x M, column r-1 = b(r)
    CMatrix tx_field;
    double gamma = 0.0;
};

Workspace make_workspace(const TransmitCovariance &q, double rho, const ScenarioSample &scenario,
                         const SystemConfig &cfg)
{
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::domain_error("port selection: rho must lie in (0, 1]");
    Workspace ws;
    ws.tx_field = tx_field_matrix(scenario, cfg);
    ws.gamma = effective_gain(ws.tx_field, q, cfg);
    ws.all_ports.resize(static_cast<Eigen::Index>(scenario.rx_paths.size()), cfg.m_ports);
    for (int r = 1; r <= cfg.m_ports; ++r)
        ws.all_ports.col(r - 1) = rx_field_vector(r, scenario, cfg);
    return ws;
}

CMatrix gather(const CMatrix &all_ports, const std::vector<int> &ports)
{
    CMatrix out(all_ports.rows(), static_cast<Eigen::Index>(ports.size()));
    for (std::size_t i = 0; i < ports.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = all_ports.col(ports[i] - 1);
    return out;
}

CMatrix inverse_core_of(const CMatrix &b_bar, double gamma, Eigen::Index v_r)
{
    CMatrix core = CMatrix::Identity(v_r, v_r);
    if (b_bar.cols() > 0)
        core += gamma * (b_bar * b_bar.adjoint());
    Eigen::LLT<CMatrix> llt(core);
    CMatrix inv = llt.solve(CMatrix::Identity(v_r, v_r));
    return 0.5 * (inv + inv.adjoint());
}

double quadratic_form(const CMatrix &inverse_core, const CVector &b) { return (b.adjoint() * inverse_core * b)(0, 0).real(); }

// (1/rho) log2 det(I_{m_a} + gamma B^H B)
double selection_objective(const Workspace &ws, const std::vector<int> &ports, double rho)
{
    const CMatrix b = gather(ws.all_ports, ports);
    CMatrix k = CMatrix::Identity(b.cols(), b.cols()) + ws.gamma * (b.adjoint() * b);
    k = 0.5 * (k + k.adjoint()).eval();
    return log2_det_hpd(k) / rho;
}

std::vector<int> pass_once(const Workspace &ws, std::vector<int> current, int m_ports)
{
    const Eigen::Index v_r = ws.all_ports.rows();
    for (std::size_t m = 0; m < current.size(); ++m)
    {
        std::vector<int> retained;
        retained.reserve(current.size() - 1);
        for (std::size_t i = 0; i < current.size(); ++i)
            if (i != m)
                retained.push_back(current[i]);
        const CMatrix inv = inverse_core_of(gather(ws.all_ports, retained), ws.gamma, v_r);

        int best_port = current[m];
        double best_score = quadratic_form(inv, ws.all_ports.col(best_port - 1));
        for (int c = 1; c <= m_ports; ++c)
        {
            if (c == current[m] || std::find(retained.begin(), retained.end(), c) != retained.end())
                continue;
            const double score = quadratic_form(inv, ws.all_ports.col(c - 1));
            if (score > best_score + 1e-12 * std::abs(best_score))
            {
                best_score = score;
                best_port = c;
            }
        }
        current[m] = best_port;
    }
    std::sort(current.begin(), current.end());
    return current;
}

} // namespace

PortScoreContext make_port_context(const PortSelection &ports, int position, double gamma,
                                   const ScenarioSample &scenario, const SystemConfig &cfg)
{
    if (position < 0 || position >= ports.size())
        throw std::out_of_range("make_port_context: position outside the selection");
    PortScoreContext ctx;
    ctx.gamma = gamma;
    for (int i = 0; i < ports.size(); ++i)
        if (i != position)
            ctx.retained.push_back(ports[i]);
    const auto v_r = static_cast<Eigen::Index>(scenario.rx_paths.size());
    ctx.b_bar.resize(v_r, static_cast<Eigen::Index>(ctx.retained.size()));
    for (std::size_t i = 0; i < ctx.retained.size(); ++i)
        ctx.b_bar.col(static_cast<Eigen::Index>(i)) = rx_field_vector(ctx.retained[i], scenario, cfg);
    ctx.inverse_core = inverse_core_of(ctx.b_bar, gamma, v_r);
    return ctx;
}

double per_port_score(int candidate, const PortScoreContext &ctx, const ScenarioSample &scenario,
                      const SystemConfig &cfg)
{
    if (std::find(ctx.retained.begin(), ctx.retained.end(), candidate) != ctx.retained.end())
        throw std::invalid_argument("per_port_score: candidate " + std::to_string(candidate) +
                                    " collides with a retained port");
    return quadratic_form(ctx.inverse_core, rx_field_vector(candidate, scenario, cfg));
}

PortSelection coordinate_pass(const PortSelection &ports, const TransmitCovariance &q, double rho,
                              const ScenarioSample &scenario, const SystemConfig &cfg)
{
    const Workspace ws = make_workspace(q, rho, scenario, cfg);
    return PortSelection(pass_once(ws, ports.ports(), cfg.m_ports), cfg.m_ports);
}

PortSearchResult select_ports(const PortSelection &start, const TransmitCovariance &q, double rho,
                              const ScenarioSample &scenario, const SystemConfig &cfg)
{
    const Workspace ws = make_workspace(q, rho, scenario, cfg);
    std::vector<int> current = start.ports();
    double objective = selection_objective(ws, current, rho);

    PortSearchResult result{start, objective, 0, false};
    for (int pass = 0; pass < port_pass_cap; ++pass)
    {
        std::vector<int> next = pass_once(ws, current, cfg.m_ports);
        ++result.passes;
        if (next == current)
        {
            result.converged = true;
            break;
        }
        const double next_objective = selection_objective(ws, next, rho);
        const double gain = next_objective - objective;
        current = std::move(next);
        objective = next_objective;
        if (gain < cfg.eps2)
        {
            result.converged = true;
            break;
        }
    }
    result.ports = PortSelection(current, cfg.m_ports);
    result.objective = objective;
    return result;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i)
    {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (acc > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        acc = acc * num / static_cast<std::uint64_t>(i);
    }
    return acc;
}

ExhaustiveResult exhaustive_best(const TransmitCovariance &q, double rho, const ScenarioSample &scenario,
                                 const SystemConfig &cfg)
{
    const int m = cfg.m_ports, k = cfg.m_active;
    if (binomial(m, k) > exhaustive_guard)
        throw std::length_error("exhaustive_best: C(" + std::to_string(m) + ", " + std::to_string(k) +
                                ") exceeds the enumeration guard");
    const Workspace ws = make_workspace(q, rho, scenario, cfg);

    std::vector<int> combo(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        combo[static_cast<std::size_t>(i)] = i + 1;

    std::vector<int> best_combo = combo;
    double best = -std::numeric_limits<double>::infinity();
    while (true)
    {
        const double value = selection_objective(ws, combo, rho);
        if (value > best)
        {
            best = value;
            best_combo = combo;
        }
        // next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k + i + 1)
            --i;
        if (i < 0)
            break;
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
    return {PortSelection(best_combo, m), best};
}

} // namespace fasc
