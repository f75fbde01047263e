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

#include "fasc/channel_model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fasc
{

namespace
{
constexpr std::complex<double> j_unit{0.0, 1.0};

double centered_coordinate(int index, int count, double spacing)
{
    return (2.0 * (index - 1) - count + 1) / 2.0 * spacing;
}

std::complex<double> phase_term(double path_difference, double wavelength)
{
    return std::exp(j_unit * (2.0 * std::numbers::pi * path_difference / wavelength));
}
} // namespace

double bs_antenna_y(int n, const SystemConfig &cfg)
{
    if (n < 1 || n > cfg.n_tx)
        throw std::out_of_range("bs_antenna_y: antenna index " + std::to_string(n) + " outside {1.." +
                                std::to_string(cfg.n_tx) + "}");
    return centered_coordinate(n, cfg.n_tx, cfg.d_bs);
}

double port_y(int port, const SystemConfig &cfg)
{
    if (port < 1 || port > cfg.m_ports)
        throw std::out_of_range("port_y: port index " + std::to_string(port) + " outside {1.." +
                                std::to_string(cfg.m_ports) + "}");
    return centered_coordinate(port, cfg.m_ports, cfg.d_u);
}

double path_diff(double theta, double distance, double y, PathDiffMode mode)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("path_diff: scatterer distance must be positive");
    const double s = std::sin(theta);
    if (mode == PathDiffMode::taylor)
        return -y * s - y * y * s * s / (2.0 * distance);

    // sqrt(v^2 + y^2 - 2 v y sin(theta)) - v, rearranged to avoid cancellation
    const double excess = y * y - 2.0 * distance * y * s;
    return excess / (std::sqrt(distance * distance + excess) + distance);
}

CMatrix tx_field_matrix(const ScenarioSample &scenario, const SystemConfig &cfg)
{
    const auto v_t = static_cast<Eigen::Index>(scenario.tx_paths.size());
    CMatrix a(v_t, cfg.n_tx);
    for (int n = 1; n <= cfg.n_tx; ++n)
    {
        const double y = bs_antenna_y(n, cfg);
        for (Eigen::Index p = 0; p < v_t; ++p)
            a(p, n - 1) = phase_term(path_diff_tx(scenario.tx_paths[static_cast<std::size_t>(p)], y,
                                                  cfg.path_diff_mode),
                                     cfg.wavelength);
    }
    return a;
}

CVector rx_field_vector(int port, const ScenarioSample &scenario, const SystemConfig &cfg)
{
    const double y = port_y(port, cfg);
    const auto v_r = static_cast<Eigen::Index>(scenario.rx_paths.size());
    CVector b(v_r);
    for (Eigen::Index q = 0; q < v_r; ++q)
        b(q) = phase_term(path_diff_rx(scenario.rx_paths[static_cast<std::size_t>(q)], y, cfg.path_diff_mode),
                          cfg.wavelength);
    return b;
}

CMatrix rx_field_matrix(const PortSelection &ports, const ScenarioSample &scenario, const SystemConfig &cfg)
{
    CMatrix b(static_cast<Eigen::Index>(scenario.rx_paths.size()), ports.size());
    for (int m = 0; m < ports.size(); ++m)
        b.col(m) = rx_field_vector(ports[m], scenario, cfg);
    return b;
}

PathResponse sample_path_response(const SystemConfig &cfg, Rng &rng)
{
    PathResponse out{CMatrix::Zero(cfg.v_rx_paths, cfg.v_tx_paths)};
    if (cfg.path_gain_var == 0.0)
        return out;

    if (cfg.path_response == PathResponseModel::real_gaussian)
    {
        std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.path_gain_var));
        for (Eigen::Index p = 0; p < out.o.cols(); ++p)
            for (Eigen::Index q = 0; q < out.o.rows(); ++q)
                out.o(q, p) = gauss(rng);
    }
    else
    {
        std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.path_gain_var / 2.0));
        for (Eigen::Index p = 0; p < out.o.cols(); ++p)
            for (Eigen::Index q = 0; q < out.o.rows(); ++q)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                out.o(q, p) = {re, im};
            }
    }
    return out;
}

CMatrix channel(const CMatrix &rx_field, const PathResponse &o, const CMatrix &tx_field)
{
    if (o.o.rows() != rx_field.rows() || o.o.cols() != tx_field.rows())
        throw std::invalid_argument("channel: path response is " + std::to_string(o.o.rows()) + "x" +
                                    std::to_string(o.o.cols()) + ", field responses need " +
                                    std::to_string(rx_field.rows()) + "x" + std::to_string(tx_field.rows()));
    return rx_field.adjoint() * o.o * tx_field;
}

CMatrix channel(const PortSelection &ports, const PathResponse &o, const ScenarioSample &scenario,
                const SystemConfig &cfg)
{
    return channel(rx_field_matrix(ports, scenario, cfg), o, tx_field_matrix(scenario, cfg));
}

// ---------- TransmitCovariance ----------

TransmitCovariance::TransmitCovariance(CMatrix q) : q_(std::move(q))
{
    if (q_.rows() != q_.cols())
        throw std::invalid_argument("transmit covariance must be square");
    if (q_.size() == 0)
        return;
    const double asym = (q_ - q_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermitian_tol)
        throw std::invalid_argument("transmit covariance is not Hermitian (deviation " + std::to_string(asym) + ")");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(q_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("transmit covariance is not positive semidefinite (min eigenvalue " +
                                    std::to_string(eig.eigenvalues().minCoeff()) + ")");
}

TransmitCovariance TransmitCovariance::rank_one(const CVector &direction, double power)
{
    if (power < 0.0)
        throw std::invalid_argument("rank_one covariance: power must be nonnegative");
    const double norm = direction.norm();
    if (!(norm > 0.0))
        throw std::invalid_argument("rank_one covariance: zero direction");
    const CVector v = direction / norm;
    return TransmitCovariance(power * (v * v.adjoint()));
}

TransmitCovariance TransmitCovariance::zero(int n_tx) { return TransmitCovariance(CMatrix::Zero(n_tx, n_tx)); }

void TransmitCovariance::check_budget(double p_max) const
{
    if (trace() > p_max + 1e-9)
        throw std::invalid_argument("transmit covariance trace " + std::to_string(trace()) + " exceeds p_max " +
                                    std::to_string(p_max));
}

// ---------- Rates ----------

double log2_det_hpd(const CMatrix &m)
{
    Eigen::LLT<CMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("log2_det_hpd: matrix is not positive definite");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        acc += std::log2(llt.matrixLLT()(i, i).real());
    return 2.0 * acc;
}

McEstimate mc_rate(const PortSelection &ports, const TransmitCovariance &q, const ScenarioSample &scenario,
                   const SystemConfig &cfg, int n_samples, std::uint64_t seed)
{
    if (n_samples < 1)
        throw std::invalid_argument("mc_rate: n_samples must be >= 1");
    const CMatrix a = tx_field_matrix(scenario, cfg);
    if (q.dim() != a.cols())
        throw std::invalid_argument("mc_rate: covariance dimension does not match n_tx");
    const CMatrix bh = rx_field_matrix(ports, scenario, cfg).adjoint();
    const CMatrix aqa = a * q.matrix() * a.adjoint();
    const CMatrix eye = CMatrix::Identity(bh.rows(), bh.rows());

    Rng rng = make_stream(seed, {0x6d63ull});
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < n_samples; ++i)
    {
        const PathResponse o = sample_path_response(cfg, rng);
        const CMatrix t = bh * o.o;
        CMatrix k = eye + (t * aqa * t.adjoint()) / cfg.noise_power;
        k = 0.5 * (k + k.adjoint()).eval();
        const double x = log2_det_hpd(k);
        const double delta = x - mean;
        mean += delta / (i + 1);
        m2 += delta * (x - mean);
    }
    McEstimate est;
    est.mean = mean;
    est.std_error = n_samples > 1 ? std::sqrt(m2 / (n_samples - 1) / n_samples) : 0.0;
    return est;
}

double effective_gain(const CMatrix &tx_field, const TransmitCovariance &q, const SystemConfig &cfg)
{
    if (q.dim() != tx_field.cols())
        throw std::invalid_argument("covariance dimension does not match n_tx");
    return cfg.gamma0() * (tx_field * q.matrix() * tx_field.adjoint()).trace().real();
}

double rate_upper_bound(const CMatrix &rx_field, const CMatrix &tx_field, const TransmitCovariance &q, double rho,
                        const SystemConfig &cfg)
{
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::domain_error("rate_upper_bound: rho must lie in (0, 1]");
    const double gamma = effective_gain(tx_field, q, cfg);
    const CMatrix gram = rx_field.adjoint() * rx_field;
    CMatrix k = CMatrix::Identity(gram.rows(), gram.cols()) + gamma * gram;
    k = 0.5 * (k + k.adjoint()).eval();
    return log2_det_hpd(k) / rho;
}

double rate_upper_bound(const PortSelection &ports, const TransmitCovariance &q, double rho,
                        const ScenarioSample &scenario, const SystemConfig &cfg)
{
    return rate_upper_bound(rx_field_matrix(ports, scenario, cfg), tx_field_matrix(scenario, cfg), q, rho, cfg);
}

} // namespace fasc
