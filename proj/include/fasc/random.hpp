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
#include <initializer_list>
#include <random>

namespace fasc
{

using Rng = std::mt19937_64;

// Derives an independent, reproducible stream from a master seed and a path of
// indices, e.g. (seed, {snr_index, trial_index, purpose}). Adding new paths never
// perturbs existing ones.
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

} // namespace fasc
