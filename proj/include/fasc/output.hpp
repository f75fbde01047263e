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
#include <iosfwd>
#include <string>
#include <vector>

namespace fasc
{

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

void write_sweep_csv(std::ostream &out, const std::vector<RunRecord> &records);
void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows);
void write_convergence_csv(std::ostream &out, const std::vector<ConvergenceTrace> &traces);

// Parses one data row of sweep.csv.
RunRecord parse_sweep_row(const std::string &line, int m_ports);

std::string convergence_svg(const std::vector<ConvergenceTrace> &traces);
std::string snr_rate_svg(const std::vector<SummaryRow> &rows);

// Writes sweep.csv, summary.csv, convergence.csv and, with plots, the two SVG
// figures into out_dir (created if needed). Returns the written paths. I/O
// failures throw std::runtime_error naming the path.
std::vector<std::filesystem::path> emit_outputs(const std::vector<RunRecord> &records,
                                                const std::vector<ConvergenceTrace> &traces,
                                                const std::filesystem::path &out_dir, bool plots);

} // namespace fasc
