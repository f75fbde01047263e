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

#include "fasc/system_config.hpp"

#include <cmath>

namespace fasc
{

namespace
{
void require(bool ok, const std::string &message)
{
    if (!ok)
        throw ConfigError(message);
}
} // namespace

void SystemConfig::validate() const
{
    require(n_tx >= 1, "n_tx must be >= 1");
    require(m_ports >= 1, "m_ports must be >= 1");
    require(m_active >= 1 && m_active <= m_ports, "m_active must satisfy 1 <= m_active <= m_ports");
    require(wavelength > 0.0, "wavelength must be positive");
    require(d_bs > 0.0, "d_bs must be positive");
    require(d_u > 0.0, "d_u must be positive");
    require(v_tx_paths >= 1, "v_tx_paths must be >= 1");
    require(v_rx_paths >= 1, "v_rx_paths must be >= 1");
    require(noise_power > 0.0, "noise_power must be positive");
    require(path_gain_var >= 0.0, "path_gain_var must be nonnegative");
    require(p_max > 0.0, "p_max must be positive");
    require(p0 > 0.0, "p0 must be positive");
    require(eps1 > 0.0, "eps1 must be positive");
    require(eps2 > 0.0, "eps2 must be positive");
    require(mc_samples >= 1, "mc_samples must be >= 1");
    require(scatterer_dist_range.lo > 0.0 && scatterer_dist_range.lo <= scatterer_dist_range.hi,
            "scatterer_dist_range must satisfy 0 < lo <= hi");
    require(std::isfinite(p_max) && std::isfinite(noise_power), "powers must be finite");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double p_max_for_snr(const SystemConfig &cfg, double snr_db) { return cfg.noise_power * std::pow(10.0, snr_db / 10.0); }

std::string to_string(PathDiffMode mode) { return mode == PathDiffMode::exact ? "exact" : "taylor"; }

std::string to_string(PathResponseModel model)
{
    return model == PathResponseModel::real_gaussian ? "real" : "complex";
}

PathDiffMode parse_path_diff_mode(const std::string &text)
{
    if (text == "exact")
        return PathDiffMode::exact;
    if (text == "taylor")
        return PathDiffMode::taylor;
    throw ConfigError("path_diff_mode must be 'exact' or 'taylor', got '" + text + "'");
}

PathResponseModel parse_path_response_model(const std::string &text)
{
    if (text == "real")
        return PathResponseModel::real_gaussian;
    if (text == "complex")
        return PathResponseModel::complex_gaussian;
    throw ConfigError("path_response must be 'real' or 'complex', got '" + text + "'");
}

} // namespace fasc
