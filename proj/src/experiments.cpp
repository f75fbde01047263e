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

#include "fasc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fasc
{

namespace
{

constexpr std::uint64_t scenario_tag = 1;
constexpr std::uint64_t baseline_tag = 2;

double snr_of(const SystemConfig &cfg) { return 10.0 * std::log10(cfg.p_max / cfg.noise_power); }

double bound_on(const PortSelection &ports, const QRhoSolution &sol, const CMatrix &tx_field,
                const ScenarioSample &scenario, const SystemConfig &cfg)
{
    return rate_upper_bound(rx_field_matrix(ports, scenario, cfg), tx_field, sol.q, sol.rho, cfg);
}

RunRecord make_record(SchemeId scheme, const SystemConfig &cfg, const QRhoSolution &sol, const PortSelection &ports,
                      double rate, int outer_iterations)
{
    RunRecord rec;
    rec.scheme = scheme;
    rec.snr_db = snr_of(cfg);
    rec.rate = rate;
    rec.rho = sol.rho;
    rec.trace_q = sol.trace_q();
    rec.ports = ports;
    rec.outer_iterations = outer_iterations;
    return rec;
}

// Shared alternation loop. With semantic == false the covariance step is the
// uncompressed full-power solution.
SchemeResult alternate(SchemeId scheme, bool semantic, const ScenarioSample &scenario, const SystemConfig &cfg,
                       const LoadModel &model)
{
    scenario.validate(cfg);
    const CMatrix tx_field = tx_field_matrix(scenario, cfg);
    PortSelection ports = PortSelection::evenly_spaced(cfg.m_active, cfg.m_ports);

    QRhoSolution incumbent = uncompressed_solution(rx_field_matrix(ports, scenario, cfg), tx_field, cfg);
    double eta = bound_on(ports, incumbent, tx_field, scenario, cfg);
    std::vector<ConvergencePoint> trace{{0, eta}};

    bool converged = false;
    bool inner_converged = true;
    int iteration = 0;
    while (iteration < outer_iteration_cap)
    {
        ++iteration;
        const CMatrix rx_field = rx_field_matrix(ports, scenario, cfg);
        QRhoSolution candidate =
            semantic ? solve_q_rho(rx_field, tx_field, cfg, model) : uncompressed_solution(rx_field, tx_field, cfg);
        inner_converged = inner_converged && candidate.converged;
        // eta is the incumbent's bound on the current ports; only accept improvements
        if (rate_upper_bound(rx_field, tx_field, candidate.q, candidate.rho, cfg) >= eta)
            incumbent = std::move(candidate);

        PortSearchResult search = select_ports(ports, incumbent.q, incumbent.rho, scenario, cfg);
        inner_converged = inner_converged && search.converged;
        ports = search.ports;

        const double next = search.objective;
        trace.push_back({iteration, next});
        const bool done = std::abs(next - eta) <= cfg.eps2;
        eta = next;
        if (done)
        {
            converged = true;
            break;
        }
    }

    SchemeResult out{make_record(scheme, cfg, incumbent, ports, eta, iteration), std::move(incumbent),
                     std::move(trace), converged && inner_converged};
    return out;
}

} // namespace

std::string to_string(SchemeId scheme)
{
    switch (scheme)
    {
    case SchemeId::proposed:
        return "proposed";
    case SchemeId::random_fas_semantic:
        return "random_fas_semantic";
    case SchemeId::fas_non_semantic:
        return "fas_non_semantic";
    case SchemeId::conventional:
        return "conventional";
    }
    throw std::logic_error("unknown scheme");
}

SchemeId parse_scheme(const std::string &text)
{
    for (auto s : all_schemes)
        if (to_string(s) == text)
            return s;
    throw ConfigError("unknown scheme '" + text + "'");
}

SchemeResult alternate_optimize(const ScenarioSample &scenario, const SystemConfig &cfg, const LoadModel &model)
{
    return alternate(SchemeId::proposed, true, scenario, cfg, model);
}

SchemeResult optimize_fixed_ports(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg,
                                  const LoadModel &model)
{
    const CMatrix tx_field = tx_field_matrix(scenario, cfg);
    QRhoSolution sol = solve_q_rho(rx_field_matrix(ports, scenario, cfg), tx_field, cfg, model);
    const double rate = bound_on(ports, sol, tx_field, scenario, cfg);
    const bool converged = sol.converged;
    RunRecord rec = make_record(SchemeId::random_fas_semantic, cfg, sol, ports, rate, 1);
    return {std::move(rec), std::move(sol), {{0, rate}}, converged};
}

SchemeResult run_baseline(SchemeId scheme, const ScenarioSample &scenario, const SystemConfig &cfg,
                          const LoadModel &model, Rng &rng)
{
    switch (scheme)
    {
    case SchemeId::proposed:
        return alternate_optimize(scenario, cfg, model);
    case SchemeId::random_fas_semantic:
        return optimize_fixed_ports(PortSelection::random(cfg.m_active, cfg.m_ports, rng), scenario, cfg, model);
    case SchemeId::fas_non_semantic:
        return alternate(SchemeId::fas_non_semantic, false, scenario, cfg, model);
    case SchemeId::conventional:
    {
        if (cfg.m_ports < 2)
            throw ConfigError("conventional scheme needs m_ports >= 2 for its two static receive elements");
        // two static elements at the first and last port positions
        const PortSelection ends({1, cfg.m_ports}, cfg.m_ports);
        const CMatrix tx_field = tx_field_matrix(scenario, cfg);
        QRhoSolution sol = uncompressed_solution(rx_field_matrix(ends, scenario, cfg), tx_field, cfg);
        const double rate = bound_on(ends, sol, tx_field, scenario, cfg);
        RunRecord rec = make_record(SchemeId::conventional, cfg, sol, ends, rate, 0);
        return {std::move(rec), std::move(sol), {{0, rate}}, true};
    }
    }
    throw std::logic_error("unknown scheme");
}

ScenarioSample scenario_for_trial(const SystemConfig &cfg, int snr_index, int trial)
{
    Rng rng = make_stream(cfg.rng_seed, {scenario_tag, static_cast<std::uint64_t>(snr_index),
                                         static_cast<std::uint64_t>(trial)});
    return sample_scenario(cfg, rng);
}

Rng baseline_stream(const SystemConfig &cfg, int snr_index, int trial)
{
    return make_stream(cfg.rng_seed,
                       {baseline_tag, static_cast<std::uint64_t>(snr_index), static_cast<std::uint64_t>(trial)});
}

void ExperimentConfig::validate() const
{
    system.validate();
    if (schemes.empty())
        throw ConfigError("schemes must list at least one scheme");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        for (std::size_t j = i + 1; j < schemes.size(); ++j)
            if (schemes[i] == schemes[j])
                throw ConfigError("schemes lists '" + to_string(schemes[i]) + "' twice");
    if (snr_db_list.empty())
        throw ConfigError("snr_db_list must not be empty");
    for (double snr : snr_db_list)
        if (!std::isfinite(snr))
            throw ConfigError("snr_db_list entries must be finite");
    if (n_trials < 1)
        throw ConfigError("n_trials must be >= 1");
    if (out_dir.empty())
        throw ConfigError("out_dir must not be empty");
    if (std::find(schemes.begin(), schemes.end(), SchemeId::conventional) != schemes.end() && system.m_ports < 2)
        throw ConfigError("conventional scheme needs m_ports >= 2 for its two static receive elements");
}

SweepResult sweep_snr(const std::vector<double> &snr_list, int n_trials, const SystemConfig &cfg,
                      const LoadModel &model, const std::vector<SchemeId> &schemes)
{
    if (snr_list.empty())
        throw std::invalid_argument("sweep_snr: empty SNR list");
    if (n_trials < 1)
        throw std::invalid_argument("sweep_snr: n_trials must be >= 1");

    // canonical scheme order keeps emitted rows independent of the config's listing order
    std::vector<SchemeId> ordered = schemes;
    std::sort(ordered.begin(), ordered.end());

    SweepResult out;
    for (std::size_t i = 0; i < snr_list.size(); ++i)
    {
        SystemConfig point = cfg;
        point.p_max = p_max_for_snr(cfg, snr_list[i]);
        const int snr_index = static_cast<int>(i);
        for (int trial = 0; trial < n_trials; ++trial)
        {
            const ScenarioSample scenario = scenario_for_trial(point, snr_index, trial);
            Rng rng = baseline_stream(point, snr_index, trial);
            for (SchemeId scheme : ordered)
            {
                SchemeResult res = run_baseline(scheme, scenario, point, model, rng);
                res.record.snr_db = snr_list[i];
                res.record.trial = trial;
                if (!res.converged)
                    ++out.unconverged_runs;
                if (scheme == SchemeId::proposed && trial == 0)
                    out.traces.push_back({snr_list[i], res.trace});
                out.records.push_back(std::move(res.record));
            }
        }
    }
    return out;
}

std::vector<ConvergenceTrace> convergence_traces(const std::vector<double> &snr_list, const SystemConfig &cfg,
                                                 const LoadModel &model, int *unconverged)
{
    std::vector<ConvergenceTrace> out;
    for (std::size_t i = 0; i < snr_list.size(); ++i)
    {
        SystemConfig point = cfg;
        point.p_max = p_max_for_snr(cfg, snr_list[i]);
        const ScenarioSample scenario = scenario_for_trial(point, static_cast<int>(i), 0);
        SchemeResult res = alternate_optimize(scenario, point, model);
        if (!res.converged && unconverged)
            ++*unconverged;
        out.push_back({snr_list[i], std::move(res.trace)});
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord> &records)
{
    // keyed by (scheme, first-seen SNR position) so row order follows the sweep
    std::vector<double> snr_order;
    for (const auto &r : records)
        if (std::find(snr_order.begin(), snr_order.end(), r.snr_db) == snr_order.end())
            snr_order.push_back(r.snr_db);

    std::map<std::pair<int, std::size_t>, std::vector<double>> groups;
    for (const auto &r : records)
    {
        const auto pos = static_cast<std::size_t>(std::find(snr_order.begin(), snr_order.end(), r.snr_db) -
                                                  snr_order.begin());
        groups[{static_cast<int>(r.scheme), pos}].push_back(r.rate);
    }

    std::vector<SummaryRow> rows;
    for (const auto &[key, rates] : groups)
    {
        SummaryRow row;
        row.scheme = static_cast<SchemeId>(key.first);
        row.snr_db = snr_order[key.second];
        row.n_trials = static_cast<int>(rates.size());
        double sum = 0.0;
        for (double x : rates)
            sum += x;
        row.mean_rate = sum / row.n_trials;
        double ss = 0.0;
        for (double x : rates)
            ss += (x - row.mean_rate) * (x - row.mean_rate);
        row.std_rate = row.n_trials > 1 ? std::sqrt(ss / (row.n_trials - 1)) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fasc
