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

#include <catch_amalgamated.hpp>

#include <random>

using namespace fasc;
using Catch::Approx;

TEST_CASE("default load model values", "[load]")
{
    const auto model = LoadModel::default_model();
    REQUIRE(model.segment_count() == 3);
    CHECK(load(1.0, model) == Approx(0.0).margin(1e-15));
    CHECK(load(0.7, model) == Approx(0.15).margin(1e-15));
    CHECK(load(0.4, model) == Approx(0.45).margin(1e-15));
    CHECK(load(0.2, model) == Approx(0.85).margin(1e-15));
    CHECK(model.min_ratio() == 0.2);
    CHECK(model.upper_break(SegmentIndicator{1}) == 1.0);
    CHECK(model.upper_break(SegmentIndicator{3}) == 0.4);
    CHECK_THROWS_AS(load(0.19, model), std::out_of_range);
    CHECK_THROWS_AS(load(1.01, model), std::out_of_range);
    CHECK_THROWS_AS(model.segment(SegmentIndicator{4}), std::out_of_range);
}

TEST_CASE("load is continuous and decreasing", "[load]")
{
    const auto model = LoadModel::default_model();
    double prev = load(0.2, model);
    for (int i = 1; i <= 800; ++i)
    {
        const double rho = 0.2 + 0.001 * i;
        const double c = load(rho, model);
        CHECK(c < prev);
        CHECK(prev - c < 0.0021);
        prev = c;
    }
}

TEST_CASE("compression power", "[load]")
{
    const auto model = LoadModel::default_model();
    CHECK(compression_power(1.0, model, 1.0) == Approx(0.0).margin(1e-15));
    CHECK(compression_power(1.0, model, 7.0) == Approx(0.0).margin(1e-15));
    CHECK(compression_power(0.7, model, 1.0) == Approx(0.15));
    CHECK(compression_power(0.7, model, 2.0) == Approx(0.30));
}

TEST_CASE("ratio from compression power", "[load]")
{
    const auto model = LoadModel::default_model();
    CHECK(rho_from_power(0.15, SegmentIndicator{1}, model, 1.0) == Approx(0.7));
    CHECK(rho_from_power(0.0, SegmentIndicator{1}, model, 1.0) == Approx(1.0));
    CHECK(rho_from_power(0.85, SegmentIndicator{3}, model, 1.0) == Approx(0.2));
    CHECK_THROWS_AS(rho_from_power(0.5, SegmentIndicator{1}, model, 1.0), std::domain_error);
    CHECK_THROWS_AS(rho_from_power(0.1, SegmentIndicator{1}, model, 0.0), std::domain_error);
    CHECK_THROWS_AS(rho_from_power(-0.1, SegmentIndicator{1}, model, 1.0), std::domain_error);

    std::mt19937_64 rng(17);
    for (int s = 1; s <= model.segment_count(); ++s)
    {
        const SegmentIndicator ind{s};
        std::uniform_real_distribution<double> u(model.lower_break(ind), model.upper_break(ind));
        for (int i = 0; i < 200; ++i)
        {
            const double rho = u(rng);
            CHECK(std::abs(rho_from_power(compression_power(rho, model, 1.5), ind, model, 1.5) - rho) <= 1e-12);
        }
    }
}

TEST_CASE("segment trace bounds", "[load]")
{
    const auto model = LoadModel::default_model();
    const auto b1 = segment_trace_bounds(SegmentIndicator{1}, model, 10.0, 1.0);
    CHECK(b1.lo == Approx(9.85));
    CHECK(b1.hi == Approx(10.0));

    // p_max = 0.4 is below c(0.4) = 0.45, the cheapest point of segment 3
    CHECK(segment_trace_bounds(SegmentIndicator{3}, model, 0.4, 1.0).empty());
    // p_max = 0.5 leaves [0, 0.05] on segment 3 (ratios in [0.4 - 0.025, 0.4])
    const auto b3 = segment_trace_bounds(SegmentIndicator{3}, model, 0.5, 1.0);
    CHECK_FALSE(b3.empty());
    CHECK(b3.lo == 0.0);
    CHECK(b3.hi == Approx(0.05));

    for (int s = 1; s <= 3; ++s)
    {
        const auto free = segment_trace_bounds(SegmentIndicator{s}, model, 4.0, 0.0);
        CHECK(free.lo == 4.0);
        CHECK(free.hi == 4.0);
    }

    // Contiguous tiling of [p_max - c(D_S) p0, p_max]
    const double p_max = 6.0, p0 = 1.3;
    for (int s = 1; s < 3; ++s)
    {
        const auto upper = segment_trace_bounds(SegmentIndicator{s}, model, p_max, p0);
        const auto lower = segment_trace_bounds(SegmentIndicator{s + 1}, model, p_max, p0);
        CHECK(lower.hi == Approx(upper.lo).margin(1e-12));
    }
    CHECK(segment_trace_bounds(SegmentIndicator{1}, model, p_max, p0).hi == Approx(p_max));
    CHECK(segment_trace_bounds(SegmentIndicator{3}, model, p_max, p0).lo == Approx(p_max - 0.85 * p0));
}

TEST_CASE("load model validation", "[load]")
{
    CHECK_THROWS_AS(LoadModel({}), ConfigError);
    // slopes not decreasing
    CHECK_THROWS_WITH(LoadModel({{-1.0, 1.0, 0.7}, {-0.5, 0.85, 0.4}}), Catch::Matchers::ContainsSubstring("A_2"));
    // nonnegative slope
    CHECK_THROWS_AS(LoadModel({{0.5, 0.0, 0.5}}), ConfigError);
    // breakpoints out of order
    CHECK_THROWS_WITH(LoadModel({{-0.5, 0.5, 0.4}, {-1.0, 0.85, 0.7}}), Catch::Matchers::ContainsSubstring("D_2"));
    CHECK_THROWS_AS(LoadModel({{-0.5, 0.5, 1.2}}), ConfigError);
    CHECK_THROWS_AS(LoadModel({{-0.5, 0.5, 0.0}}), ConfigError);
    // negative load at rho = 1
    CHECK_THROWS_AS(LoadModel({{-0.5, 0.2, 0.5}}), ConfigError);
    CHECK_NOTHROW(LoadModel({{-0.5, 0.5, 1.0}}));
}
