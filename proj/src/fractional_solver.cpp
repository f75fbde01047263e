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

#include "fasc/fractional_solver.hpp"
#include "fasc/golden_section.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fasc
{

namespace
{

// Eigen-data shared by every branch of one (A, B) pair.
InnerProblem spectral_part(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg)
{
    if (rx_field.rows() == 0 || rx_field.cols() == 0 || tx_field.rows() == 0 || tx_field.cols() == 0)
        throw std::invalid_argument("reduce_inner: empty field matrix");
    if (tx_field.cols() != cfg.n_tx)
        throw std::invalid_argument("reduce_inner: transmit field matrix has " + std::to_string(tx_field.cols()) +
                                    " columns, n_tx = " + std::to_string(cfg.n_tx));

    InnerProblem ip;
    ip.gamma0 = cfg.gamma0();

    const CMatrix b_gram = rx_field.adjoint() * rx_field;
    Eigen::SelfAdjointEigenSolver<CMatrix> b_eig(b_gram, Eigen::EigenvaluesOnly);
    ip.b_gram_eigs = b_eig.eigenvalues().cwiseMax(0.0);

    const CMatrix a_gram = tx_field.adjoint() * tx_field;
    Eigen::SelfAdjointEigenSolver<CMatrix> a_eig(a_gram);
    const Eigen::Index top = a_gram.rows() - 1; // eigenvalues ascend
    ip.lambda_max = std::max(0.0, a_eig.eigenvalues()(top));
    ip.top_vector = a_eig.eigenvectors().col(top).normalized();
    return ip;
}

void set_branch(InnerProblem &ip, std::optional<SegmentIndicator> segment, const LoadModel &model,
                const SystemConfig &cfg)
{
    ip.segment = segment;
    if (!segment)
    {
        ip.trace_interval = {cfg.p_max, cfg.p_max};
        return;
    }
    PowerInterval bounds = segment_trace_bounds(*segment, model, cfg.p_max, cfg.p0);
    bounds.hi = std::min(bounds.hi, cfg.p_max);
    ip.trace_interval = bounds;
}

double interval_slack(double p_max) { return 1e-12 * std::max(1.0, p_max); }

} // namespace

InnerProblem reduce_inner(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg,
                          const LoadModel &model, std::optional<SegmentIndicator> segment, double tau)
{
    InnerProblem ip = spectral_part(rx_field, tx_field, cfg);
    set_branch(ip, segment, model, cfg);
    ip.tau = tau;
    return ip;
}

double inner_numerator(double p, const InnerProblem &ip)
{
    const double scale = ip.gamma0 * p * ip.lambda_max;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ip.b_gram_eigs.size(); ++i)
        acc += std::log2(1.0 + scale * ip.b_gram_eigs(i));
    return acc;
}

double inner_denominator(double p, const InnerProblem &ip, const LoadModel &model, double p0, double p_max)
{
    if (!ip.segment)
        return 1.0;
    const auto &seg = model.segment(*ip.segment);
    return ((p_max - p) / p0 - seg.intercept) / seg.slope;
}

double inner_objective(double p, const InnerProblem &ip, const LoadModel &model, double p0, double p_max)
{
    if (!ip.trace_interval.contains(p, interval_slack(p_max)))
        throw std::out_of_range("inner_objective: p = " + std::to_string(p) + " outside [" +
                                std::to_string(ip.trace_interval.lo) + ", " + std::to_string(ip.trace_interval.hi) +
                                "]");
    return inner_numerator(p, ip) - ip.tau * inner_denominator(p, ip, model, p0, p_max);
}

ScalarMaximum solve_inner(const InnerProblem &ip, const LoadModel &model, double p0, double p_max)
{
    if (ip.trace_interval.empty())
        throw std::invalid_argument("solve_inner: empty trace interval");
    auto objective = [&](double p)
    { return inner_numerator(p, ip) - ip.tau * inner_denominator(p, ip, model, p0, p_max); };
    return golden_section_maximize(objective, ip.trace_interval.lo, ip.trace_interval.hi, 1e-9 * p_max);
}

std::optional<QRhoSolution> dinkelbach(const InnerProblem &base, const LoadModel &model, const SystemConfig &cfg)
{
    if (!base.feasible())
        return std::nullopt;

    InnerProblem ip = base;
    auto ratio = [&](double p)
    {
        const double g = inner_denominator(p, ip, model, cfg.p0, cfg.p_max);
        if (!(g > 0.0))
            throw std::domain_error("dinkelbach: nonpositive compression ratio " + std::to_string(g) +
                                    " encountered (check the load model)");
        return inner_numerator(p, ip) / g;
    };

    double p = 0.5 * (ip.trace_interval.lo + ip.trace_interval.hi);
    double tau = ratio(p);
    DinkelbachTrace trace;
    bool converged = false;

    for (int i = 0; i < dinkelbach_iteration_cap; ++i)
    {
        ip.tau = tau;
        ScalarMaximum step = solve_inner(ip, model, cfg.p0, cfg.p_max);
        // The incumbent scores exactly zero; never step to something worse.
        if (step.value < 0.0)
            step = {p, 0.0};
        trace.iterations.push_back({tau, step.value, step.x});
        p = step.x;
        if (std::abs(step.value) <= cfg.eps1)
        {
            converged = true;
            break;
        }
        tau = ratio(p);
    }

    const double rho = ip.segment ? rho_from_power(cfg.p_max - p, *ip.segment, model, cfg.p0) : 1.0;
    return QRhoSolution{TransmitCovariance::rank_one(ip.top_vector, p),
                        rho,
                        ip.segment,
                        inner_numerator(p, ip) / rho,
                        std::move(trace),
                        converged};
}

std::optional<QRhoSolution> dinkelbach(std::optional<SegmentIndicator> segment, const CMatrix &rx_field,
                                       const CMatrix &tx_field, const SystemConfig &cfg, const LoadModel &model)
{
    return dinkelbach(reduce_inner(rx_field, tx_field, cfg, model, segment, 0.0), model, cfg);
}

QRhoSolution uncompressed_solution(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg)
{
    InnerProblem ip = spectral_part(rx_field, tx_field, cfg);
    ip.trace_interval = {cfg.p_max, cfg.p_max};
    const double rate = inner_numerator(cfg.p_max, ip);
    return QRhoSolution{TransmitCovariance::rank_one(ip.top_vector, cfg.p_max), 1.0, std::nullopt, rate, {}, true};
}

QRhoSolution solve_q_rho(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg,
                         const LoadModel &model)
{
    InnerProblem ip = spectral_part(rx_field, tx_field, cfg);

    set_branch(ip, std::nullopt, model, cfg);
    QRhoSolution best = *dinkelbach(ip, model, cfg);
    bool all_converged = best.converged;

    for (int s = 1; s <= model.segment_count(); ++s)
    {
        set_branch(ip, SegmentIndicator{s}, model, cfg);
        auto candidate = dinkelbach(ip, model, cfg);
        if (!candidate)
            continue;
        all_converged = all_converged && candidate->converged;
        if (candidate->upper_bound_rate > best.upper_bound_rate)
            best = std::move(*candidate);
    }
    best.converged = all_converged;
    return best;
}

QRhoSolution solve_q_rho(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg,
                         const LoadModel &model)
{
    return solve_q_rho(rx_field_matrix(ports, scenario, cfg), tx_field_matrix(scenario, cfg), cfg, model);
}

} // namespace fasc
