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

// Brute-force reference computations. Nothing here calls the solver paths it is
// used to check: the inner-problem oracles evaluate the full log-det objective on
// explicit covariance matrices, and the port oracle enumerates every selection.

#include "fasc/experiments.hpp"

#include <cstdint>
#include <iosfwd>

namespace fasc::oracle
{

// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
double power_iteration_top_eigenvalue(const CMatrix &hermitian, int iterations = 20000);

// Random PSD matrix of random rank with the given trace.
TransmitCovariance random_psd_with_trace(int n, double trace, Rng &rng);

// f(Q) - tau g(tr Q) with f evaluated as a full log det on the explicit matrix Q.
double explicit_inner_objective(const TransmitCovariance &q, const CMatrix &rx_field, const CMatrix &tx_field,
                                const InnerProblem &ip, const SystemConfig &cfg, const LoadModel &model);

// max over an evenly spaced grid of n_grid traces (endpoints included) of the
// rank-one objective, evaluated from scratch.
double grid_inner_maximum(const CMatrix &rx_field, const CMatrix &tx_field, const InnerProblem &ip,
                          const SystemConfig &cfg, const LoadModel &model, int n_grid);

struct PsdSearch
{
    double best_value = -1e300;
    int draws = 0;
};

// Best explicit_inner_objective over random PSD matrices with traces drawn
// uniformly from the branch interval.
PsdSearch random_psd_inner_search(const CMatrix &rx_field, const CMatrix &tx_field, const InnerProblem &ip,
                                  const SystemConfig &cfg, const LoadModel &model, int draws, Rng &rng);

// max over an evenly spaced grid of f(p)/g(p).
double grid_ratio_maximum(const InnerProblem &ip, const LoadModel &model, double p0, double p_max, int n_grid);

struct ExpectationCheck
{
    double max_diag_rel_error = 0.0;
    double max_offdiag_ratio = 0.0; // |off-diagonal| / (tr(M) alpha^2)
};

// Sample mean of O M O^H over n_samples path-response draws, compared against tr(M) alpha^2 I.
ExpectationCheck expectation_identity(const CMatrix &m_fixed, const SystemConfig &cfg, int n_samples,
                                      std::uint64_t seed);

struct InnerSolverCheck
{
    int instances = 0;
    double max_grid_gap = 0.0;   // max |solve_inner value - grid maximum|
    double max_psd_excess = 0.0; // max (best random-PSD value - solve_inner value)
    int psd_draws = 0;
};

// Random N-antenna instances (random scenario, branch and tau) built from `base`.
InnerSolverCheck check_inner_solver(const SystemConfig &base, const LoadModel &model, int n_tx, int instances,
                                    int n_grid, int psd_draws, std::uint64_t seed);

struct PortCheck
{
    int seeds = 0;
    int matches = 0;  // seeds where the local search reached the exhaustive optimum
    int exceeded = 0; // seeds where it claimed more than the exhaustive optimum (must be 0)
    double worst_gap = 0.0;
};

// (Q, rho) from solve_q_rho at the evenly spaced start, then select_ports against exhaustive_best.
PortCheck check_port_selection(const SystemConfig &base, const LoadModel &model, int m_ports, int m_active, int n_tx,
                               int seeds, std::uint64_t seed);

// Runs the inner-solver, exhaustive-port and expectation-identity checks on a few
// seeded instances derived from cfg; writes one line per check. Returns true if all pass.
bool run_oracle_checks(const ExperimentConfig &cfg, std::ostream &log);

} // namespace fasc::oracle
