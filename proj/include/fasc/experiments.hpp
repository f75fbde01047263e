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

#include "fasc/fractional_solver.hpp"
#include "fasc/port_selection.hpp"
#include "fasc/random.hpp"
#include "fasc/semantic_load.hpp"

#include <array>
#include <string>
#include <vector>

namespace fasc
{

enum class SchemeId
{
    proposed,
    random_fas_semantic,
    fas_non_semantic,
    conventional
};

inline constexpr std::array<SchemeId, 4> all_schemes = {SchemeId::proposed, SchemeId::random_fas_semantic,
                                                        SchemeId::fas_non_semantic, SchemeId::conventional};

std::string to_string(SchemeId scheme);
SchemeId parse_scheme(const std::string &text); // throws ConfigError

struct RunRecord
{
    SchemeId scheme = SchemeId::proposed;
    double snr_db = 0.0;
    int trial = 0;
    double rate = 0.0; // equivalent-rate upper bound, bits/s/Hz
    double rho = 1.0;
    double trace_q = 0.0; // mW
    PortSelection ports;
    int outer_iterations = 0;
};

struct ConvergencePoint
{
    int outer_iteration = 0; // 0 is the initial point
    double objective = 0.0;
};

struct SchemeResult
{
    RunRecord record;
    QRhoSolution solution;
    std::vector<ConvergencePoint> trace;
    bool converged = true; // false when any solver stopped at its iteration cap
};

inline constexpr int outer_iteration_cap = 30;

// Alternates (Q, rho) optimization and port coordinate ascent from evenly spaced
// ports until the bound changes by at most eps2, or outer_iteration_cap is reached.
SchemeResult alternate_optimize(const ScenarioSample &scenario, const SystemConfig &cfg, const LoadModel &model);

// random_fas_semantic with a given port draw.
SchemeResult optimize_fixed_ports(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg,
                                  const LoadModel &model);

// Baselines: random ports + (Q, rho) optimization; rho = 1 with port coordinate
// ascent; two static elements at the aperture ends with full-power rank-one Q.
// Passing SchemeId::proposed forwards to alternate_optimize. The conventional scheme
// needs m_ports >= 2 and throws ConfigError otherwise.
SchemeResult run_baseline(SchemeId scheme, const ScenarioSample &scenario, const SystemConfig &cfg,
                          const LoadModel &model, Rng &rng);

// Reproducible per-trial streams keyed by (rng_seed, snr index, trial).
ScenarioSample scenario_for_trial(const SystemConfig &cfg, int snr_index, int trial);
Rng baseline_stream(const SystemConfig &cfg, int snr_index, int trial);

// Batch-level parameters on top of SystemConfig.
struct ExperimentConfig
{
    SystemConfig system;
    LoadModel load_model = LoadModel::default_model();
    std::vector<SchemeId> schemes{all_schemes.begin(), all_schemes.end()};
    std::vector<double> snr_db_list{0.0, 3.0, 6.0, 9.0, 12.0, 15.0};
    int n_trials = 50;
    std::string out_dir = "out";

    void validate() const;
};

struct SummaryRow
{
    SchemeId scheme = SchemeId::proposed;
    double snr_db = 0.0;
    double mean_rate = 0.0;
    double std_rate = 0.0; // sample standard deviation; 0 for a single trial
    int n_trials = 0;
};

// Proposed-scheme convergence trace for the trial-0 scenario at one SNR.
struct ConvergenceTrace
{
    double snr_db = 0.0;
    std::vector<ConvergencePoint> points;
};

struct SweepResult
{
    std::vector<RunRecord> records; // sorted by (snr, trial, scheme)
    std::vector<ConvergenceTrace> traces;
    int unconverged_runs = 0;
};

// Runs every scheme on identical scenario draws for each (SNR, trial), with
// P_max = sigma^2 10^(snr/10).
SweepResult sweep_snr(const std::vector<double> &snr_list, int n_trials, const SystemConfig &cfg,
                      const LoadModel &model, const std::vector<SchemeId> &schemes = {all_schemes.begin(),
                                                                                      all_schemes.end()});

// Convergence traces of the proposed scheme, trial 0, one per SNR.
std::vector<ConvergenceTrace> convergence_traces(const std::vector<double> &snr_list, const SystemConfig &cfg,
                                                 const LoadModel &model, int *unconverged = nullptr);

// Mean and standard deviation per (scheme, snr), ordered by scheme then SNR.
std::vector<SummaryRow> summarize(const std::vector<RunRecord> &records);

} // namespace fasc
