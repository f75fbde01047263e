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

#include "fasc/experiments.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fasc
{

// Flat "key = value" documents. Keys are the SystemConfig field names plus
// load_model, schemes, snr_db_list, n_trials and out_dir. '#' starts a comment.
// Lists are comma-separated; load_model is a list of "(A, B, D)" triples and
// scatterer_dist_range is "lo, hi". Unknown keys and malformed values raise
// ConfigError; the result is validated before it is returned.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

// Inverse of parse_experiment_config.
std::string format_experiment_config(const ExperimentConfig &cfg);

} // namespace fasc
