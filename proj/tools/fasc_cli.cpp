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

// Batch command-line front end.
//
//   fasc [--config PATH] [--seed U64] [--out DIR] [--plots] <command>
//
//   simulate       one scenario, one scheme; prints the run record
//   sweep          all schemes over the SNR list; writes sweep/summary/convergence CSVs
//   convergence    proposed-scheme convergence traces per SNR
//   oracle-check   brute-force reference checks of the solvers
//   print-config   effective configuration in config-file syntax
//
// Exit codes: 0 success, 2 configuration error, 3 a solver stopped at its iteration cap.

#include "fasc/config_file.hpp"
#include "fasc/experiments.hpp"
#include "fasc/oracles.hpp"
#include "fasc/output.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

namespace
{

constexpr int exit_config = 2;
constexpr int exit_nonconvergence = 3;

struct GlobalOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    bool plots = false;
};

fasc::ExperimentConfig load(const GlobalOptions &opts)
{
    fasc::ExperimentConfig cfg =
        opts.config_path.empty() ? fasc::ExperimentConfig{} : fasc::load_experiment_config(opts.config_path);
    if (opts.seed)
        cfg.system.rng_seed = *opts.seed;
    if (opts.out_dir)
        cfg.out_dir = *opts.out_dir;
    cfg.validate();
    return cfg;
}

void print_summary(const std::vector<fasc::SummaryRow> &rows)
{
    std::cout << std::left << std::setw(22) << "scheme" << std::right << std::setw(8) << "snr_db" << std::setw(14)
              << "mean_rate" << std::setw(12) << "std_rate" << '\n';
    for (const auto &r : rows)
        std::cout << std::left << std::setw(22) << fasc::to_string(r.scheme) << std::right << std::setw(8)
                  << r.snr_db << std::setw(14) << std::fixed << std::setprecision(4) << r.mean_rate << std::setw(12)
                  << r.std_rate << std::defaultfloat << '\n';
}

int run_simulate(const GlobalOptions &opts, const std::string &scheme_name, std::optional<double> snr_db, int trial)
{
    const auto cfg = load(opts);
    fasc::SystemConfig sys = cfg.system;
    if (snr_db)
        sys.p_max = fasc::p_max_for_snr(sys, *snr_db);
    const auto scheme = fasc::parse_scheme(scheme_name);
    const auto scenario = fasc::scenario_for_trial(sys, 0, trial);
    fasc::Rng rng = fasc::baseline_stream(sys, 0, trial);

    auto result = fasc::run_baseline(scheme, scenario, sys, cfg.load_model, rng);
    result.record.trial = trial;
    if (snr_db)
        result.record.snr_db = *snr_db;
    fasc::write_sweep_csv(std::cout, {result.record});
    if (!result.converged)
    {
        std::cerr << "warning: a solver stopped at its iteration cap\n";
        return exit_nonconvergence;
    }
    return 0;
}

int run_sweep(const GlobalOptions &opts)
{
    const auto cfg = load(opts);
    const auto sweep = fasc::sweep_snr(cfg.snr_db_list, cfg.n_trials, cfg.system, cfg.load_model, cfg.schemes);
    auto traces = sweep.traces;
    int unconverged = sweep.unconverged_runs;
    if (traces.empty()) // proposed scheme not in the list
        traces = fasc::convergence_traces(cfg.snr_db_list, cfg.system, cfg.load_model, &unconverged);

    for (const auto &path : fasc::emit_outputs(sweep.records, traces, cfg.out_dir, opts.plots))
        std::cerr << "wrote " << path.string() << '\n';
    print_summary(fasc::summarize(sweep.records));
    if (unconverged > 0)
    {
        std::cerr << "warning: " << unconverged << " run(s) stopped at an iteration cap\n";
        return exit_nonconvergence;
    }
    return 0;
}

int run_convergence(const GlobalOptions &opts)
{
    const auto cfg = load(opts);
    int unconverged = 0;
    const auto traces = fasc::convergence_traces(cfg.snr_db_list, cfg.system, cfg.load_model, &unconverged);

    std::filesystem::create_directories(cfg.out_dir);
    const auto csv_path = std::filesystem::path(cfg.out_dir) / "convergence.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv)
        throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
    fasc::write_convergence_csv(csv, traces);
    std::cerr << "wrote " << csv_path.string() << '\n';
    if (opts.plots)
    {
        const auto svg_path = std::filesystem::path(cfg.out_dir) / "fig_convergence.svg";
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg)
            throw std::runtime_error("cannot open " + svg_path.string() + " for writing");
        svg << fasc::convergence_svg(traces);
        std::cerr << "wrote " << svg_path.string() << '\n';
    }

    fasc::write_convergence_csv(std::cout, traces);
    if (unconverged > 0)
    {
        std::cerr << "warning: " << unconverged << " run(s) stopped at an iteration cap\n";
        return exit_nonconvergence;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Joint covariance, semantic compression and fluid-antenna port optimization"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--config", opts.config_path, "Experiment config file (key = value)")->check(CLI::ExistingFile);
    app.add_option("--seed", opts.seed, "Override rng_seed");
    app.add_option("--out", opts.out_dir, "Override out_dir");
    app.add_flag("--plots", opts.plots, "Also write SVG figures");

    std::string scheme = "proposed";
    std::optional<double> snr_db;
    int trial = 0;
    auto *simulate = app.add_subcommand("simulate", "Run one scheme on one scenario and print its record");
    simulate->add_option("--scheme", scheme, "proposed | random_fas_semantic | fas_non_semantic | conventional");
    simulate->add_option("--snr", snr_db, "SNR in dB (sets p_max); default uses p_max from the config");
    simulate->add_option("--trial", trial, "Scenario index")->check(CLI::NonNegativeNumber);

    auto *sweep = app.add_subcommand("sweep", "Run all schemes over snr_db_list and write CSV outputs");
    auto *convergence = app.add_subcommand("convergence", "Write proposed-scheme convergence traces");
    auto *oracle = app.add_subcommand("oracle-check", "Run brute-force reference checks");
    auto *print_config = app.add_subcommand("print-config", "Print the effective configuration");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*simulate)
            return run_simulate(opts, scheme, snr_db, trial);
        if (*sweep)
            return run_sweep(opts);
        if (*convergence)
            return run_convergence(opts);
        if (*oracle)
            return fasc::oracle::run_oracle_checks(load(opts), std::cout) ? 0 : 1;
        if (*print_config)
        {
            std::cout << fasc::format_experiment_config(load(opts));
            return 0;
        }
    }
    catch (const fasc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
