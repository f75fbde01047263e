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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fasc
{

// Raised for any invalid user-supplied configuration. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

enum class PathDiffMode
{
    exact,  // square-root distance difference
    taylor  // second-order polynomial used by the field responses
};

enum class PathResponseModel
{
    real_gaussian,   // O_{q,p} ~ N(0, alpha^2)
    complex_gaussian // O_{q,p} ~ CN(0, alpha^2)
};

struct DistanceRange
{
    double lo = 0.1; // meters
    double hi = 1.0; // meters
};

// 3 dBm expressed in milliwatts.
inline constexpr double default_noise_power_mw = 1.9952623149688795;

// All physical and algorithmic parameters. Powers are linear milliwatts.
struct SystemConfig
{
    int n_tx = 20;
    int m_ports = 35;
    int m_active = 5;
    double wavelength = 4e-3;
    double d_bs = 2e-3;
    double d_u = 2e-3;
    int v_tx_paths = 3;
    int v_rx_paths = 3;
    double noise_power = default_noise_power_mw;
    double path_gain_var = 1.0 / 3.0;
    double p_max = default_noise_power_mw * 31.622776601683793; // 15 dB SNR
    double p0 = 1.0;
    double eps1 = 1e-5;
    double eps2 = 1e-5;
    int mc_samples = 1000;
    DistanceRange scatterer_dist_range{};
    std::uint64_t rng_seed = 1;
    PathDiffMode path_diff_mode = PathDiffMode::taylor;
    PathResponseModel path_response = PathResponseModel::real_gaussian;

    // Throws ConfigError naming the first violated constraint.
    void validate() const;

    // alpha^2 / sigma^2
    double gamma0() const { return path_gain_var / noise_power; }
};

double dbm_to_mw(double dbm);

// P_max = sigma^2 * 10^(snr/10)
double p_max_for_snr(const SystemConfig &cfg, double snr_db);

std::string to_string(PathDiffMode mode);
std::string to_string(PathResponseModel model);
PathDiffMode parse_path_diff_mode(const std::string &text);
PathResponseModel parse_path_response_model(const std::string &text);

} // namespace fasc
