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
#include "fasc/scenario.hpp"
#include "fasc/system_config.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace fasc
{

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// ---------- Geometry ----------

// y coordinate of the n-th (1-based) base-station antenna, meters.
double bs_antenna_y(int n, const SystemConfig &cfg);

// y coordinate of the r-th (1-based) FAS port, meters.
double port_y(int port, const SystemConfig &cfg);

// Propagation path difference between an element at y and the array origin for a
// path with elevation theta and scatterer distance v. Transmit and receive sides
// share the same geometry.
double path_diff(double theta, double distance, double y, PathDiffMode mode);

inline double path_diff_tx(const PathGeometry &path, double y, PathDiffMode mode)
{
    return path_diff(path.theta, path.distance, y, mode);
}

inline double path_diff_rx(const PathGeometry &path, double y, PathDiffMode mode)
{
    return path_diff(path.theta, path.distance, y, mode);
}

// ---------- Field responses ----------

// V_t x N, entry (p, n) = exp(j 2 pi d_t^p(n) / lambda).
CMatrix tx_field_matrix(const ScenarioSample &scenario, const SystemConfig &cfg);

// V_r x m_a, column m = b(r_m).
CMatrix rx_field_matrix(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg);

// Single receive field response b(port), length V_r.
CVector rx_field_vector(int port, const ScenarioSample &scenario, const SystemConfig &cfg);

// ---------- Random path response ----------

struct PathResponse
{
    CMatrix o; // V_r x V_t
};

PathResponse sample_path_response(const SystemConfig &cfg, Rng &rng);

// G = B^H O A, m_a x N. Throws std::invalid_argument on dimension mismatch.
CMatrix channel(const CMatrix &rx_field, const PathResponse &o, const CMatrix &tx_field);
CMatrix channel(const PortSelection &ports, const PathResponse &o, const ScenarioSample &scenario,
                const SystemConfig &cfg);

// ---------- Transmit covariance ----------

// Hermitian positive-semidefinite N x N matrix. Construction validates both.
class TransmitCovariance
{
public:
    static constexpr double hermitian_tol = 1e-10;
    static constexpr double psd_tol = 1e-9;

    explicit TransmitCovariance(CMatrix q);

    // p * v v^H with v normalized to unit length.
    static TransmitCovariance rank_one(const CVector &direction, double power);
    static TransmitCovariance zero(int n_tx);

    const CMatrix &matrix() const { return q_; }
    int dim() const { return static_cast<int>(q_.rows()); }
    double trace() const { return q_.trace().real(); }

    // Throws std::invalid_argument when tr(Q) > p_max + 1e-9.
    void check_budget(double p_max) const;

private:
    CMatrix q_;
};

// ---------- Rates ----------

struct McEstimate
{
    double mean = 0.0;      // bits/s/Hz
    double std_error = 0.0; // standard error of the mean
};

// log2 det of a Hermitian positive-definite matrix.
double log2_det_hpd(const CMatrix &m);

// Monte-Carlo estimate of E_O{ log2 det(I + G Q G^H / sigma^2) } over n_samples
// path-response draws seeded from `seed`.
McEstimate mc_rate(const PortSelection &ports, const TransmitCovariance &q, const ScenarioSample &scenario,
                   const SystemConfig &cfg, int n_samples, std::uint64_t seed);

// Jensen upper bound on the equivalent rate:
// (1/rho) log2 det(I + (alpha^2/sigma^2) tr(A Q A^H) B^H B).
double rate_upper_bound(const PortSelection &ports, const TransmitCovariance &q, double rho,
                        const ScenarioSample &scenario, const SystemConfig &cfg);

// Same bound from precomputed field matrices.
double rate_upper_bound(const CMatrix &rx_field, const CMatrix &tx_field, const TransmitCovariance &q, double rho,
                        const SystemConfig &cfg);

// gamma = (alpha^2/sigma^2) tr(A Q A^H)
double effective_gain(const CMatrix &tx_field, const TransmitCovariance &q, const SystemConfig &cfg);

} // namespace fasc
