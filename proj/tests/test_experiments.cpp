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

#include "fasc/config_file.hpp"
#include "fasc/experiments.hpp"
#include "fasc/output.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fasc;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace
{

SystemConfig small_system()
{
    SystemConfig cfg;
    cfg.m_ports = 6;
    cfg.m_active = 2;
    cfg.n_tx = 4;
    return cfg;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("scheme names", "[experiments]")
{
    for (auto s : all_schemes)
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("semantic"), ConfigError);
}

TEST_CASE("alternating optimization", "[experiments]")
{
    const auto model = LoadModel::default_model();

    SECTION("every port active")
    {
        SystemConfig cfg = small_system();
        cfg.m_active = cfg.m_ports;
        const auto scenario = scenario_for_trial(cfg, 0, 2);
        const auto res = alternate_optimize(scenario, cfg, model);
        const auto direct = solve_q_rho(PortSelection::evenly_spaced(cfg.m_ports, cfg.m_ports), scenario, cfg, model);
        CHECK(res.record.rate == Approx(direct.upper_bound_rate).epsilon(1e-12));
        CHECK(res.record.rho == direct.rho);
    }
    SECTION("default trace is non-decreasing and converges")
    {
        SystemConfig cfg;
        for (int trial = 0; trial < 5; ++trial)
        {
            const auto res = alternate_optimize(scenario_for_trial(cfg, 0, trial), cfg, model);
            CHECK(res.converged);
            CHECK(res.record.outer_iterations <= outer_iteration_cap);
            REQUIRE(res.trace.size() >= 2);
            CHECK(res.trace.front().outer_iteration == 0);
            for (std::size_t i = 1; i < res.trace.size(); ++i)
            {
                CHECK(res.trace[i].outer_iteration == static_cast<int>(i));
                CHECK(res.trace[i].objective >= res.trace[i - 1].objective - 1e-9);
            }
            CHECK(res.trace.back().objective == res.record.rate);
        }
    }
    SECTION("reported rate re-evaluates from (Q, rho, ports)")
    {
        const SystemConfig cfg = small_system();
        for (int trial = 0; trial < 10; ++trial)
        {
            const auto scenario = scenario_for_trial(cfg, 1, trial);
            const auto res = alternate_optimize(scenario, cfg, model);
            CHECK(rate_upper_bound(res.record.ports, res.solution.q, res.solution.rho, scenario, cfg) ==
                  Approx(res.record.rate).margin(1e-6));
            CHECK(res.record.trace_q + compression_power(res.record.rho, model, cfg.p0) ==
                  Approx(cfg.p_max).margin(1e-6));
        }
    }
}

TEST_CASE("baselines", "[experiments]")
{
    const auto model = LoadModel::default_model();

    SECTION("non-semantic FAS never beats the proposed scheme")
    {
        SystemConfig cfg;
        for (int trial = 0; trial < 10; ++trial)
        {
            const auto scenario = scenario_for_trial(cfg, 0, trial);
            Rng rng = baseline_stream(cfg, 0, trial);
            const auto plain = run_baseline(SchemeId::fas_non_semantic, scenario, cfg, model, rng);
            const auto proposed = run_baseline(SchemeId::proposed, scenario, cfg, model, rng);
            CHECK(plain.record.rho == 1.0);
            CHECK(plain.record.trace_q == Approx(cfg.p_max));
            CHECK(plain.record.rate <= proposed.record.rate + 1e-9);
        }
    }
    SECTION("random ports that coincide with the proposed ports")
    {
        const SystemConfig cfg = small_system();
        int coincidences = 0;
        for (int trial = 0; trial < 200 && coincidences < 3; ++trial)
        {
            const auto scenario = scenario_for_trial(cfg, 0, trial);
            Rng rng = baseline_stream(cfg, 0, trial);
            const auto random = run_baseline(SchemeId::random_fas_semantic, scenario, cfg, model, rng);
            const auto proposed = alternate_optimize(scenario, cfg, model);
            if (!(random.record.ports == proposed.record.ports))
                continue;
            ++coincidences;
            CHECK(random.record.rate == Approx(proposed.record.rate).margin(1e-4));
        }
        CHECK(coincidences > 0);
    }
    SECTION("conventional receiver at zero elevation")
    {
        SystemConfig cfg;
        ScenarioSample flat;
        flat.tx_paths.assign(3, PathGeometry{0.0, 0.0, 0.4});
        flat.rx_paths.assign(3, PathGeometry{0.0, 0.0, 0.4});
        Rng rng = make_stream(1, {});
        const auto res = run_baseline(SchemeId::conventional, flat, cfg, model, rng);
        // B = ones(3, 2): B^H B has eigenvalues 6 and 0; tr(A Q A^H) = 3 N p_max
        const double expected = std::log2(1.0 + cfg.gamma0() * 3.0 * cfg.n_tx * cfg.p_max * 6.0);
        CHECK(res.record.rate == Approx(expected).epsilon(1e-10));
        CHECK(res.record.ports.to_string() == "1;35");
        CHECK(res.record.outer_iterations == 0);
    }
    SECTION("conventional needs two ports")
    {
        SystemConfig cfg;
        cfg.m_ports = 1;
        cfg.m_active = 1;
        Rng rng = make_stream(1, {});
        CHECK_THROWS_AS(run_baseline(SchemeId::conventional, scenario_for_trial(cfg, 0, 0), cfg, model, rng),
                        ConfigError);
    }
}

TEST_CASE("sweep aggregation", "[experiments]")
{
    const auto model = LoadModel::default_model();
    const SystemConfig cfg = small_system();

    SECTION("single point equals direct calls")
    {
        const auto sweep = sweep_snr({6.0}, 1, cfg, model);
        REQUIRE(sweep.records.size() == 4);
        SystemConfig point = cfg;
        point.p_max = p_max_for_snr(cfg, 6.0);
        const auto scenario = scenario_for_trial(point, 0, 0);
        Rng rng = baseline_stream(point, 0, 0);
        for (std::size_t i = 0; i < 4; ++i)
        {
            const auto direct = run_baseline(all_schemes[i], scenario, point, model, rng);
            CHECK(sweep.records[i].scheme == all_schemes[i]);
            CHECK(sweep.records[i].rate == direct.record.rate);
            CHECK(sweep.records[i].ports == direct.record.ports);
        }
        REQUIRE(sweep.traces.size() == 1);
        CHECK(sweep.traces[0].snr_db == 6.0);
    }
    SECTION("scheme listing order does not change output")
    {
        const auto a = sweep_snr({0.0, 9.0}, 2, cfg, model, {SchemeId::conventional, SchemeId::proposed});
        const auto b = sweep_snr({0.0, 9.0}, 2, cfg, model, {SchemeId::proposed, SchemeId::conventional});
        std::ostringstream sa, sb;
        write_sweep_csv(sa, a.records);
        write_sweep_csv(sb, b.records);
        CHECK(sa.str() == sb.str());
    }
    SECTION("summary statistics")
    {
        const auto sweep = sweep_snr({0.0, 3.0, 6.0}, 3, cfg, model);
        const auto rows = summarize(sweep.records);
        REQUIRE(rows.size() == 12);
        for (const auto &row : rows)
        {
            CHECK(row.n_trials == 3);
            std::vector<double> rates;
            for (const auto &r : sweep.records)
                if (r.scheme == row.scheme && r.snr_db == row.snr_db)
                    rates.push_back(r.rate);
            REQUIRE(rates.size() == 3);
            const double mean = (rates[0] + rates[1] + rates[2]) / 3.0;
            double ss = 0.0;
            for (double x : rates)
                ss += (x - mean) * (x - mean);
            CHECK(row.mean_rate == Approx(mean).epsilon(1e-14));
            CHECK(row.std_rate == Approx(std::sqrt(ss / 2.0)).epsilon(1e-12));
        }
    }
    SECTION("bad arguments")
    {
        CHECK_THROWS_AS(sweep_snr({}, 1, cfg, model), std::invalid_argument);
        CHECK_THROWS_AS(sweep_snr({0.0}, 0, cfg, model), std::invalid_argument);
    }
}

TEST_CASE("config file parsing", "[config]")
{
    SECTION("defaults and overrides")
    {
        const auto cfg = parse_experiment_config("# comment\n"
                                                 "n_tx = 8\n"
                                                 "  m_ports=12 \n"
                                                 "\n"
                                                 "snr_db_list = 0, 10\n"
                                                 "schemes = conventional, proposed\n"
                                                 "load_model = (-0.5, 0.5, 0.6), (-1.5, 1.1, 0.3)\n"
                                                 "path_diff_mode = exact\n"
                                                 "path_response = complex\n"
                                                 "scatterer_dist_range = 0.2, 0.9\n"
                                                 "rng_seed = 18446744073709551615\n");
        CHECK(cfg.system.n_tx == 8);
        CHECK(cfg.system.m_ports == 12);
        CHECK(cfg.system.m_active == 5);
        CHECK(cfg.snr_db_list == std::vector<double>{0.0, 10.0});
        CHECK(cfg.schemes == std::vector<SchemeId>{SchemeId::conventional, SchemeId::proposed});
        REQUIRE(cfg.load_model.segment_count() == 2);
        CHECK(cfg.load_model.segment(SegmentIndicator{2}).slope == -1.5);
        CHECK(cfg.system.path_diff_mode == PathDiffMode::exact);
        CHECK(cfg.system.path_response == PathResponseModel::complex_gaussian);
        CHECK(cfg.system.scatterer_dist_range.lo == 0.2);
        CHECK(cfg.system.rng_seed == 18446744073709551615ull);
    }
    SECTION("round trip through the formatter")
    {
        auto cfg = parse_experiment_config("n_trials = 7\np_max = 12.5\nout_dir = results\n");
        const auto again = parse_experiment_config(format_experiment_config(cfg));
        CHECK(format_experiment_config(again) == format_experiment_config(cfg));
        CHECK(again.n_trials == 7);
        CHECK(again.system.p_max == 12.5);
        CHECK(again.out_dir == "results");
    }
    SECTION("errors")
    {
        CHECK_THROWS_WITH(parse_experiment_config("n_tx = 4\nfoo = 1\n"), ContainsSubstring("line 2"));
        CHECK_THROWS_WITH(parse_experiment_config("n_tx = 4\nn_tx = 5\n"), ContainsSubstring("duplicate"));
        CHECK_THROWS_AS(parse_experiment_config("n_tx 4\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("n_tx = four\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("n_tx = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("m_active = 40\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("schemes = proposed, proposed\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("schemes = best\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("path_diff_mode = fresnel\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("load_model = (-0.5, 0.5)\n"), ConfigError);
        CHECK_THROWS_WITH(parse_experiment_config("load_model = (-0.5, 0.5, 0.4), (-1, 0.85, 0.7)\n"),
                          ContainsSubstring("D_2"));
        CHECK_THROWS_AS(parse_experiment_config("snr_db_list =\n"), ConfigError);
        CHECK_THROWS_AS(load_experiment_config("/nonexistent/fasc.cfg"), ConfigError);
    }
}

TEST_CASE("CSV output", "[output]")
{
    SECTION("empty inputs give headers only")
    {
        std::ostringstream a, b, c;
        write_sweep_csv(a, {});
        write_summary_csv(b, {});
        write_convergence_csv(c, {});
        CHECK(a.str() == "scheme,snr_db,trial,rate,rho,trace_q,ports,outer_iterations\n");
        CHECK(b.str() == "scheme,snr_db,mean_rate,std_rate,n_trials\n");
        CHECK(c.str() == "snr_db,outer_iteration,objective\n");
    }
    SECTION("row round trip")
    {
        RunRecord r;
        r.scheme = SchemeId::random_fas_semantic;
        r.snr_db = 12.0;
        r.trial = 41;
        r.rate = 123.45678901234567;
        r.rho = 0.2000000000000001;
        r.trace_q = 1.0 / 3.0;
        r.ports = PortSelection({3, 7, 30}, 35);
        r.outer_iterations = 4;
        std::ostringstream out;
        write_sweep_csv(out, {r});
        std::istringstream in(out.str());
        std::string header, row, extra;
        std::getline(in, header);
        std::getline(in, row);
        CHECK_FALSE(std::getline(in, extra));
        const auto back = parse_sweep_row(row, 35);
        CHECK(back.scheme == r.scheme);
        CHECK(back.snr_db == r.snr_db);
        CHECK(back.trial == r.trial);
        CHECK(back.rate == r.rate);
        CHECK(back.rho == r.rho);
        CHECK(back.trace_q == r.trace_q);
        CHECK(back.ports == r.ports);
        CHECK(back.outer_iterations == r.outer_iterations);
        CHECK_THROWS(parse_sweep_row("proposed,1,2", 35));
    }
    SECTION("files on disk")
    {
        const auto dir = std::filesystem::temp_directory_path() / "fasc_output_test";
        std::filesystem::remove_all(dir);
        const SystemConfig cfg = small_system();
        const auto sweep = sweep_snr({0.0, 15.0}, 2, cfg, LoadModel::default_model());
        const auto written = emit_outputs(sweep.records, sweep.traces, dir, true);
        CHECK(written.size() == 5);
        CHECK(std::filesystem::exists(dir / "sweep.csv"));
        CHECK(std::filesystem::exists(dir / "fig_snr_rate.svg"));
        const auto summary = slurp(dir / "summary.csv");
        CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 4 * 2);
        CHECK_THAT(slurp(dir / "fig_convergence.svg"), ContainsSubstring("<svg"));
        std::filesystem::remove_all(dir);
    }
}
