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

#include "fasc/semantic_load.hpp"
#include "fasc/system_config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fasc
{

namespace
{
constexpr double ratio_slack = 1e-12;

double eval_segment(const LoadSegment &seg, double rho) { return seg.slope * rho + seg.intercept; }
} // namespace

LoadModel::LoadModel(std::vector<LoadSegment> segments) : segments_(std::move(segments))
{
    if (segments_.empty())
        throw ConfigError("load model: at least one segment is required");

    for (std::size_t i = 0; i < segments_.size(); ++i)
    {
        const auto s = std::to_string(i + 1);
        const auto &seg = segments_[i];
        if (!std::isfinite(seg.slope) || !std::isfinite(seg.intercept) || !std::isfinite(seg.lower_break))
            throw ConfigError("load model: segment " + s + " has non-finite parameters");
        if (i == 0 && !(seg.slope < 0.0))
            throw ConfigError("load model: slopes must satisfy 0 > A_1 > ... > A_S (A_1 = " +
                              std::to_string(seg.slope) + " is not negative)");
        if (i > 0 && !(seg.slope < segments_[i - 1].slope))
            throw ConfigError("load model: slopes must satisfy 0 > A_1 > ... > A_S (violated at A_" + s + ")");
        if (i == 0 && !(seg.lower_break <= 1.0))
            throw ConfigError("load model: breakpoints must satisfy D_1 <= D_0 = 1");
        if (i > 0 && !(seg.lower_break < segments_[i - 1].lower_break))
            throw ConfigError("load model: breakpoints must satisfy D_S < ... < D_1 (violated at D_" + s + ")");
    }
    if (!(segments_.back().lower_break > 0.0))
        throw ConfigError("load model: breakpoints must satisfy D_S > 0");

    // Each piece is decreasing, so its minimum sits at the upper break.
    for (int s = 1; s <= segment_count(); ++s)
    {
        const SegmentIndicator ind{s};
        if (eval_segment(segment(ind), upper_break(ind)) < -ratio_slack)
            throw ConfigError("load model: c(rho) must be nonnegative on [D_S, 1] (negative on segment " +
                              std::to_string(s) + ")");
    }
}

LoadModel LoadModel::default_model()
{
    return LoadModel({{-0.5, 0.5, 0.7}, {-1.0, 0.85, 0.4}, {-2.0, 1.25, 0.2}});
}

const LoadSegment &LoadModel::segment(SegmentIndicator s) const
{
    if (s.s < 1 || s.s > segment_count())
        throw std::out_of_range("load model: segment " + std::to_string(s.s) + " outside {1.." +
                                std::to_string(segment_count()) + "}");
    return segments_[static_cast<std::size_t>(s.s - 1)];
}

double LoadModel::lower_break(SegmentIndicator s) const { return segment(s).lower_break; }

double LoadModel::upper_break(SegmentIndicator s) const
{
    segment(s);
    return s.s == 1 ? 1.0 : segments_[static_cast<std::size_t>(s.s - 2)].lower_break;
}

std::optional<SegmentIndicator> LoadModel::segment_of(double rho) const
{
    if (!(rho <= 1.0) || rho < min_ratio())
        return std::nullopt;
    for (int s = 1; s <= segment_count(); ++s)
        if (rho >= segments_[static_cast<std::size_t>(s - 1)].lower_break)
            return SegmentIndicator{s};
    return std::nullopt;
}

double load(double rho, const LoadModel &model)
{
    const auto s = model.segment_of(rho);
    if (!s)
        throw std::out_of_range("load: rho = " + std::to_string(rho) + " outside [D_S, 1]");
    return eval_segment(model.segment(*s), rho);
}

double compression_power(double rho, const LoadModel &model, double p0) { return load(rho, model) * p0; }

double rho_from_power(double p_c, SegmentIndicator s, const LoadModel &model, double p0)
{
    if (!(p0 > 0.0))
        throw std::domain_error("rho_from_power: p0 must be positive");
    if (p_c < -ratio_slack)
        throw std::domain_error("rho_from_power: compression power must be nonnegative");
    const auto &seg = model.segment(s);
    const double rho = (p_c / p0 - seg.intercept) / seg.slope;
    const double lo = model.lower_break(s), hi = model.upper_break(s);
    if (rho < lo - ratio_slack || rho > hi + ratio_slack)
        throw std::domain_error("rho_from_power: P_c = " + std::to_string(p_c) + " gives rho = " +
                                std::to_string(rho) + " outside segment " + std::to_string(s.s));
    return std::clamp(rho, lo, hi);
}

PowerInterval segment_trace_bounds(SegmentIndicator s, const LoadModel &model, double p_max, double p0)
{
    const auto &seg = model.segment(s);
    const double cost_at_lower = eval_segment(seg, model.lower_break(s)); // largest cost in the segment
    const double cost_at_upper = eval_segment(seg, model.upper_break(s));
    return {std::max(0.0, p_max - cost_at_lower * p0), p_max - cost_at_upper * p0};
}

} // namespace fasc
