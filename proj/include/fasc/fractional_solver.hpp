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
#include "fasc/golden_section.hpp"
#include "fasc/semantic_load.hpp"

#include <optional>
#include <vector>

namespace fasc
{

// Reduced form of the parametric subproblem max_Q f(Q) - tau g(Q) for one branch.
//
// f depends on Q only through t = tr(A Q A^H) and g only through p = tr(Q). For a
// fixed trace p, t is largest at Q = p v v^H with v the top eigenvector of A^H A, and
// f is increasing in t, so the subproblem collapses to a concave 1-D problem in p:
//
//   f(p) = sum_i log2(1 + gamma0 * p * lambda_max * mu_i),   mu_i = eig(B^H B)
//   g(p) = ((p_max - p)/p0 - B_s) / A_s                     (compression ratio)
//
// The uncompressed branch (no segment) has g == 1 and p pinned to p_max.
struct InnerProblem
{
    double gamma0 = 0.0;
    Eigen::VectorXd b_gram_eigs;
    double lambda_max = 0.0;
    CVector top_vector;
    std::optional<SegmentIndicator> segment;
    PowerInterval trace_interval;
    double tau = 0.0;

    bool feasible() const { return !trace_interval.empty(); }
};

struct DinkelbachStep
{
    double tau = 0.0;             // tau^(i) = f(p^(i)) / g(p^(i))
    double objective_value = 0.0; // f(p^(i+1)) - tau^(i) g(p^(i+1))
    double trace_q = 0.0;         // p^(i+1)
};

struct DinkelbachTrace
{
    std::vector<DinkelbachStep> iterations;
};

struct QRhoSolution
{
    TransmitCovariance q;
    double rho = 1.0;
    std::optional<SegmentIndicator> segment; // nullopt: uncompressed branch
    double upper_bound_rate = 0.0;
    DinkelbachTrace trace;
    bool converged = true;

    double trace_q() const { return q.trace(); }
};

inline constexpr int dinkelbach_iteration_cap = 100;

// Builds the reduced subproblem for one branch. Pass segment == nullopt for the
// rho = 1 branch.
InnerProblem reduce_inner(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg,
                          const LoadModel &model, std::optional<SegmentIndicator> segment, double tau);

// Numerator f(p) and denominator g(p) of the fractional objective.
double inner_numerator(double p, const InnerProblem &ip);
double inner_denominator(double p, const InnerProblem &ip, const LoadModel &model, double p0, double p_max);

// f(p) - tau g(p). Throws std::out_of_range when p lies outside the trace interval.
double inner_objective(double p, const InnerProblem &ip, const LoadModel &model, double p0, double p_max);

// Maximizes inner_objective over the trace interval by golden-section search with
// argument tolerance 1e-9 * p_max. Throws std::invalid_argument on an empty interval.
ScalarMaximum solve_inner(const InnerProblem &ip, const LoadModel &model, double p0, double p_max);

// Dinkelbach iteration on a prepared subproblem (its tau is ignored). Returns nullopt
// when the branch is infeasible; throws std::domain_error if g <= 0 is encountered.
std::optional<QRhoSolution> dinkelbach(const InnerProblem &base, const LoadModel &model, const SystemConfig &cfg);

std::optional<QRhoSolution> dinkelbach(std::optional<SegmentIndicator> segment, const CMatrix &rx_field,
                                       const CMatrix &tx_field, const SystemConfig &cfg, const LoadModel &model);

// Best (Q, rho) for fixed ports over all load segments plus the rho = 1 branch.
// Ties go to the uncompressed branch, then to the smaller segment index.
QRhoSolution solve_q_rho(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg,
                         const LoadModel &model);

QRhoSolution solve_q_rho(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg,
                         const LoadModel &model);

// Rank-one full-power covariance with rho = 1: the optimum when no compression is used.
QRhoSolution uncompressed_solution(const CMatrix &rx_field, const CMatrix &tx_field, const SystemConfig &cfg);

} // namespace fasc
