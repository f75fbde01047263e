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

#include <optional>
#include <vector>

namespace fasc
{

// One linear piece c(rho) = slope * rho + intercept, active on [lower_break, previous break).
struct LoadSegment
{
    double slope = 0.0;       // A_s
    double intercept = 0.0;   // B_s
    double lower_break = 0.0; // D_s
};

// Index of the active load segment, 1-based.
struct SegmentIndicator
{
    int s = 1;

    friend bool operator==(SegmentIndicator, SegmentIndicator) = default;
};

// Closed interval of transmit powers tr(Q), milliwatts. Empty when lo > hi.
struct PowerInterval
{
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return lo > hi; }
    bool contains(double p, double tol = 0.0) const { return p >= lo - tol && p <= hi + tol; }
};

// Piecewise-linear computation load. Construction enforces
//   0 > A_1 > A_2 > ... > A_S,
//   0 < D_S < ... < D_1 <= D_0 = 1,
//   c(rho) >= 0 on [D_S, 1],
// and throws ConfigError naming the violated ordering.
class LoadModel
{
public:
    explicit LoadModel(std::vector<LoadSegment> segments);

    // Continuous three-piece model with c(1) = 0.
    static LoadModel default_model();

    int segment_count() const { return static_cast<int>(segments_.size()); }
    const std::vector<LoadSegment> &segments() const { return segments_; }
    const LoadSegment &segment(SegmentIndicator s) const;

    // D_s and D_{s-1} (D_0 = 1).
    double lower_break(SegmentIndicator s) const;
    double upper_break(SegmentIndicator s) const;

    // Smallest admissible ratio D_S.
    double min_ratio() const { return segments_.back().lower_break; }

    // Segment whose interval contains rho; nullopt outside [D_S, 1].
    std::optional<SegmentIndicator> segment_of(double rho) const;

private:
    std::vector<LoadSegment> segments_;
};

// c(rho). Throws std::out_of_range outside [D_S, 1].
double load(double rho, const LoadModel &model);

// P_c = c(rho) p0, milliwatts.
double compression_power(double rho, const LoadModel &model, double p0);

// Inverse of compression_power restricted to segment s. Throws std::domain_error
// when the result falls outside [D_s, D_{s-1}] (beyond a 1e-12 slack) or p0 <= 0.
double rho_from_power(double p_c, SegmentIndicator s, const LoadModel &model, double p0);

// Admissible tr(Q) range when segment s is active:
// [max(0, p_max - c(D_s) p0), p_max - c(D_{s-1}) p0]. May be empty.
PowerInterval segment_trace_bounds(SegmentIndicator s, const LoadModel &model, double p_max, double p0);

} // namespace fasc
