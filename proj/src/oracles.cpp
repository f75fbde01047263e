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

#include "fasc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fasc::oracle
{

namespace
{

double affine_ratio(double p, const InnerProblem &ip, const LoadModel &model, double p0, double p_max)
{
    if (!ip.segment)
        return 1.0;
    const LoadSegment &seg = model.segments()[static_cast<std::size_t>(ip.segment->s - 1)];
    const double p_c = p_max - p;
    return (p_c / p0 - seg.intercept) / seg.slope;
}

double full_log2_det(double t, double gamma0, const CMatrix &rx_field)
{
    const CMatrix gram = rx_field.adjoint() * rx_field;
    CMatrix k = CMatrix::Identity(gram.rows(), gram.cols()) + gamma0 * t * gram;
    k = 0.5 * (k + k.adjoint()).eval();
    return log2_det_hpd(k);
}

} // namespace

double power_iteration_top_eigenvalue(const CMatrix &hermitian, int iterations)
{
    const Eigen::Index n = hermitian.rows();
    CVector x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x(i) = {1.0 + 0.01 * static_cast<double>(i), 0.003 * static_cast<double>(i)};
    x.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it)
    {
        CVector y = hermitian * x;
        const double norm = y.norm();
        if (norm == 0.0)
            return 0.0;
        x = y / norm;
        const double next = (x.adjoint() * hermitian * x)(0, 0).real();
        if (it > 50 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next)))
            return next;
        lambda = next;
    }
    return lambda;
}

TransmitCovariance random_psd_with_trace(int n, double trace, Rng &rng)
{
    std::uniform_int_distribution<int> rank_dist(1, n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int rank = rank_dist(rng);
    CMatrix w(n, rank);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
        for (Eigen::Index i = 0; i < w.rows(); ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            w(i, j) = {re, im};
        }
    CMatrix q = w * w.adjoint();
    q = 0.5 * (q + q.adjoint()).eval();
    q *= trace / q.trace().real();
    return TransmitCovariance(q);
}

double explicit_inner_objective(const TransmitCovariance &q, const CMatrix &rx_field, const CMatrix &tx_field,
                                const InnerProblem &ip, const SystemConfig &cfg, const LoadModel &model)
{
    const double t = (tx_field * q.matrix() * tx_field.adjoint()).trace().real();
    const double f = full_log2_det(t, cfg.gamma0(), rx_field);
    return f - ip.tau * affine_ratio(q.trace(), ip, model, cfg.p0, cfg.p_max);
}

double grid_inner_maximum(const CMatrix &rx_field, const CMatrix &tx_field, const InnerProblem &ip,
                          const SystemConfig &cfg, const LoadModel &model, int n_grid)
{
    const double lambda = power_iteration_top_eigenvalue(tx_field.adjoint() * tx_field);
    const double lo = ip.trace_interval.lo, hi = ip.trace_interval.hi;
    double best = -1e300;
    for (int k = 0; k < n_grid; ++k)
    {
        const double p = n_grid == 1 ? lo : lo + (hi - lo) * k / (n_grid - 1);
        const double value =
            full_log2_det(p * lambda, cfg.gamma0(), rx_field) - ip.tau * affine_ratio(p, ip, model, cfg.p0, cfg.p_max);
        best = std::max(best, value);
    }
    return best;
}

PsdSearch random_psd_inner_search(const CMatrix &rx_field, const CMatrix &tx_field, const InnerProblem &ip,
                                  const SystemConfig &cfg, const LoadModel &model, int draws, Rng &rng)
{
    std::uniform_real_distribution<double> trace_dist(ip.trace_interval.lo, ip.trace_interval.hi);
    PsdSearch out;
    for (int d = 0; d < draws; ++d)
    {
        const double p = ip.trace_interval.lo == ip.trace_interval.hi ? ip.trace_interval.lo : trace_dist(rng);
        const auto q = random_psd_with_trace(static_cast<int>(tx_field.cols()), p, rng);
        out.best_value = std::max(out.best_value, explicit_inner_objective(q, rx_field, tx_field, ip, cfg, model));
        ++out.draws;
    }
    return out;
}

double grid_ratio_maximum(const InnerProblem &ip, const LoadModel &model, double p0, double p_max, int n_grid)
{
    const double lo = ip.trace_interval.lo, hi = ip.trace_interval.hi;
    double best = -1e300;
    for (int k = 0; k < n_grid; ++k)
    {
        const double p = n_grid == 1 ? lo : lo + (hi - lo) * k / (n_grid - 1);
        double f = 0.0;
        for (Eigen::Index i = 0; i < ip.b_gram_eigs.size(); ++i)
            f += std::log(1.0 + ip.gamma0 * p * ip.lambda_max * ip.b_gram_eigs(i)) / std::log(2.0);
        best = std::max(best, f / affine_ratio(p, ip, model, p0, p_max));
    }
    return best;
}

ExpectationCheck expectation_identity(const CMatrix &m_fixed, const SystemConfig &cfg, int n_samples,
                                      std::uint64_t seed)
{
    Rng rng = make_stream(seed, {0x65ull});
    CMatrix acc = CMatrix::Zero(cfg.v_rx_paths, cfg.v_rx_paths);
    for (int i = 0; i < n_samples; ++i)
    {
        const PathResponse o = sample_path_response(cfg, rng);
        acc += o.o * m_fixed * o.o.adjoint();
    }
    acc /= static_cast<double>(n_samples);

    const double target = m_fixed.trace().real() * cfg.path_gain_var;
    ExpectationCheck out;
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
        for (Eigen::Index j = 0; j < acc.cols(); ++j)
        {
            if (i == j)
                out.max_diag_rel_error = std::max(out.max_diag_rel_error, std::abs(acc(i, i).real() - target) / target);
            else
                out.max_offdiag_ratio = std::max(out.max_offdiag_ratio, std::abs(acc(i, j)) / target);
        }
    return out;
}

InnerSolverCheck check_inner_solver(const SystemConfig &base, const LoadModel &model, int n_tx, int instances,
                                    int n_grid, int psd_draws, std::uint64_t seed)
{
    SystemConfig cfg = base;
    cfg.n_tx = n_tx;
    InnerSolverCheck out;
    Rng rng = make_stream(seed, {0x69ull});
    std::uniform_int_distribution<int> branch_dist(0, model.segment_count());

    for (int k = 0; k < instances; ++k)
    {
        const ScenarioSample scenario = sample_scenario(cfg, rng);
        const PortSelection ports = PortSelection::random(cfg.m_active, cfg.m_ports, rng);
        const CMatrix rx = rx_field_matrix(ports, scenario, cfg);
        const CMatrix tx = tx_field_matrix(scenario, cfg);

        // pick a feasible branch
        InnerProblem ip;
        do
        {
            const int b = branch_dist(rng);
            ip = reduce_inner(rx, tx, cfg, model,
                              b == 0 ? std::nullopt : std::optional<SegmentIndicator>(SegmentIndicator{b}), 0.0);
        } while (!ip.feasible());

        // tau around the branch optimum so both terms matter
        std::uniform_real_distribution<double> tau_dist(0.0, 1.5);
        ip.tau = tau_dist(rng) * grid_ratio_maximum(ip, model, cfg.p0, cfg.p_max, 101);

        const ScalarMaximum solved = solve_inner(ip, model, cfg.p0, cfg.p_max);
        const double grid = grid_inner_maximum(rx, tx, ip, cfg, model, n_grid);
        const PsdSearch psd = random_psd_inner_search(rx, tx, ip, cfg, model, psd_draws, rng);

        out.max_grid_gap = std::max(out.max_grid_gap, std::abs(solved.value - grid));
        out.max_psd_excess = std::max(out.max_psd_excess, psd.best_value - solved.value);
        out.psd_draws += psd.draws;
        ++out.instances;
    }
    return out;
}

PortCheck check_port_selection(const SystemConfig &base, const LoadModel &model, int m_ports, int m_active, int n_tx,
                               int seeds, std::uint64_t seed)
{
    SystemConfig cfg = base;
    cfg.m_ports = m_ports;
    cfg.m_active = m_active;
    cfg.n_tx = n_tx;
    PortCheck out;
    for (int k = 0; k < seeds; ++k)
    {
        Rng rng = make_stream(seed, {0x70ull, static_cast<std::uint64_t>(k)});
        const ScenarioSample scenario = sample_scenario(cfg, rng);
        const PortSelection start = PortSelection::evenly_spaced(cfg.m_active, cfg.m_ports);
        const QRhoSolution sol = solve_q_rho(start, scenario, cfg, model);

        const PortSearchResult local = select_ports(start, sol.q, sol.rho, scenario, cfg);
        const ExhaustiveResult best = exhaustive_best(sol.q, sol.rho, scenario, cfg);
        const double local_rate = rate_upper_bound(local.ports, sol.q, sol.rho, scenario, cfg);

        const double tol = 1e-9 * std::max(1.0, std::abs(best.rate));
        if (local_rate > best.rate + tol)
            ++out.exceeded;
        if (local_rate >= best.rate - tol)
            ++out.matches;
        out.worst_gap = std::max(out.worst_gap, best.rate - local_rate);
        ++out.seeds;
    }
    return out;
}

bool run_oracle_checks(const ExperimentConfig &cfg, std::ostream &log)
{
    const SystemConfig &sys = cfg.system;
    const std::uint64_t seed = sys.rng_seed;
    bool all = true;
    auto report = [&](bool ok, const std::string &line)
    {
        all = all && ok;
        log << (ok ? "[PASS] " : "[FAIL] ") << line << '\n';
    };

    {
        const auto r = check_inner_solver(sys, cfg.load_model, 4, 20, 10000, 1000, seed);
        report(r.max_grid_gap <= 1e-4 && r.max_psd_excess <= 1e-9,
               "inner solver vs grid/random-PSD oracle: " + std::to_string(r.instances) +
                   " instances, max |value - grid| = " + std::to_string(r.max_grid_gap) +
                   ", max PSD excess = " + std::to_string(r.max_psd_excess));
    }
    {
        Rng rng = make_stream(seed, {0x6cull});
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
        {
            const ScenarioSample scenario = sample_scenario(sys, rng);
            const CMatrix tx = tx_field_matrix(scenario, sys);
            const PortSelection ports = PortSelection::evenly_spaced(sys.m_active, sys.m_ports);
            const InnerProblem ip = reduce_inner(rx_field_matrix(ports, scenario, sys), tx, sys, cfg.load_model,
                                                 std::nullopt, 0.0);
            const double ref = power_iteration_top_eigenvalue(tx.adjoint() * tx);
            worst = std::max(worst, std::abs(ref - ip.lambda_max) / std::max(1.0, ref));
        }
        report(worst <= 1e-8, "top eigenvalue of A^H A vs power iteration: max rel. error = " + std::to_string(worst));
    }
    {
        const auto single = check_port_selection(sys, cfg.load_model, sys.m_ports, 1, 4, 100, seed);
        report(single.matches == single.seeds && single.exceeded == 0,
               "coordinate ascent, m_a = 1: " + std::to_string(single.matches) + "/" + std::to_string(single.seeds) +
                   " equal the exhaustive argmax");
        const auto pair = check_port_selection(sys, cfg.load_model, 8, 2, 4, 100, seed);
        report(pair.matches >= 90 && pair.exceeded == 0,
               "coordinate ascent, M = 8, m_a = 2: " + std::to_string(pair.matches) + "/" +
                   std::to_string(pair.seeds) + " reach the exhaustive optimum, " + std::to_string(pair.exceeded) +
                   " exceed it");
    }
    {
        Rng rng = make_stream(seed, {0x78ull});
        const ScenarioSample scenario = sample_scenario(sys, rng);
        const CMatrix tx = tx_field_matrix(scenario, sys);
        const InnerProblem ip =
            reduce_inner(rx_field_matrix(PortSelection::evenly_spaced(sys.m_active, sys.m_ports), scenario, sys), tx,
                         sys, cfg.load_model, std::nullopt, 0.0);
        const auto q = TransmitCovariance::rank_one(ip.top_vector, sys.p_max);
        const CMatrix m_fixed = tx * q.matrix() * tx.adjoint();
        const auto e = expectation_identity(m_fixed, sys, 10000, seed);
        report(e.max_diag_rel_error <= 0.05 && e.max_offdiag_ratio <= 0.05,
               "E{O M O^H} = tr(M) alpha^2 I over 1e4 draws: diag rel. error = " +
                   std::to_string(e.max_diag_rel_error) + ", off-diag ratio = " + std::to_string(e.max_offdiag_ratio));
    }
    return all;
}

} // namespace fasc::oracle
