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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fasc/experiments.hpp"
#include "fasc/oracles.hpp"
#include "fasc/output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace fasc;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char *title, double budget_s, const std::function<Verdict()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = body();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s)
    {
        v.pass = false;
        v.detail += " [over time budget]";
    }
    if (!v.pass)
        ++failures;
    std::printf("criterion %d %s: %s (%s; %.1f s of %.0f s)\n", id, v.pass ? "PASS" : "FAIL", title, v.detail.c_str(),
                secs, budget_s);
    std::fflush(stdout);
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const std::vector<double> sweep_snrs{0.0, 3.0, 6.0, 9.0, 12.0, 15.0};
constexpr int sweep_trials = 50;

const SweepResult &default_sweep()
{
    static const SweepResult sweep = sweep_snr(sweep_snrs, sweep_trials, SystemConfig{}, LoadModel::default_model());
    return sweep;
}

Verdict jensen_bound()
{
    const SystemConfig cfg;
    const auto model = LoadModel::default_model();
    int ok = 0, worst_k = -1;
    double worst_margin = 1e300;
    for (int k = 0; k < 50; ++k)
    {
        const auto scenario = scenario_for_trial(cfg, 0, k);
        const auto res = alternate_optimize(scenario, cfg, model);
        const auto est = mc_rate(res.record.ports, res.solution.q, scenario, cfg, cfg.mc_samples,
                                 cfg.rng_seed + static_cast<std::uint64_t>(k));
        const double mc = est.mean / res.solution.rho;
        const double se = est.std_error / res.solution.rho;
        const double bound = rate_upper_bound(res.record.ports, res.solution.q, res.solution.rho, scenario, cfg);
        const double margin = bound + 3.0 * se - mc;
        if (margin >= 0.0)
            ++ok;
        if (margin < worst_margin)
        {
            worst_margin = margin;
            worst_k = k;
        }
    }
    return {ok == 50, fmt("%.0f/50 scenarios satisfy MC mean <= bound + 3 SE, tightest margin %.4g at scenario %.0f",
                          ok, worst_margin, worst_k)};
}

Verdict expectation()
{
    const SystemConfig cfg;
    Rng rng = make_stream(cfg.rng_seed, {0xacc2});
    const auto scenario = sample_scenario(cfg, rng);
    const CMatrix tx = tx_field_matrix(scenario, cfg);
    const auto q = oracle::random_psd_with_trace(cfg.n_tx, cfg.p_max, rng);
    const CMatrix m = tx * q.matrix() * tx.adjoint();
    const auto e = oracle::expectation_identity(m, cfg, 10000, cfg.rng_seed);
    return {e.max_diag_rel_error <= 0.05 && e.max_offdiag_ratio <= 0.05,
            fmt("diag rel. error %.4f (<= 0.05), off-diag / diag %.4f (<= 0.05)", e.max_diag_rel_error,
                e.max_offdiag_ratio)};
}

Verdict inner_solver()
{
    const auto r = oracle::check_inner_solver(SystemConfig{}, LoadModel::default_model(), 4, 20, 10000, 1000, 2024);
    return {r.instances == 20 && r.max_grid_gap <= 1e-4 && r.max_psd_excess <= 1e-9,
            fmt("%.0f instances, max |solve_inner - grid| %.3g (<= 1e-4), max random-PSD excess %.3g (<= 1e-9)",
                r.instances, r.max_grid_gap, r.max_psd_excess)};
}

Verdict dinkelbach_behavior()
{
    const auto model = LoadModel::default_model();
    const SweepResult &sweep = default_sweep();
    int branches = 0, bad_tau = 0, bad_stop = 0;
    double worst_balance = 0.0;

    for (std::size_t i = 0; i < sweep_snrs.size(); ++i)
    {
        SystemConfig cfg;
        cfg.p_max = p_max_for_snr(cfg, sweep_snrs[i]);
        for (int trial = 0; trial < sweep_trials; ++trial)
        {
            const auto scenario = scenario_for_trial(cfg, static_cast<int>(i), trial);
            const CMatrix tx = tx_field_matrix(scenario, cfg);
            for (const auto &rec : sweep.records)
            {
                if (rec.snr_db != sweep_snrs[i] || rec.trial != trial)
                    continue;
                worst_balance = std::max(
                    worst_balance, std::abs(rec.trace_q + compression_power(rec.rho, model, cfg.p0) - cfg.p_max));
                if (rec.scheme != SchemeId::proposed && rec.scheme != SchemeId::random_fas_semantic)
                    continue;
                const CMatrix rx = rx_field_matrix(rec.ports, scenario, cfg);
                for (int s = 1; s <= model.segment_count(); ++s)
                {
                    const auto sol = dinkelbach(SegmentIndicator{s}, rx, tx, cfg, model);
                    if (!sol)
                        continue;
                    ++branches;
                    const auto &it = sol->trace.iterations;
                    bool mono = true;
                    for (std::size_t k = 1; k < it.size(); ++k)
                        mono = mono && it[k].tau >= it[k - 1].tau - 1e-9;
                    if (!mono)
                        ++bad_tau;
                    if (!sol->converged || it.empty() || it.size() > dinkelbach_iteration_cap ||
                        std::abs(it.back().objective_value) > cfg.eps1)
                        ++bad_stop;
                    worst_balance = std::max(
                        worst_balance,
                        std::abs(sol->trace_q() + compression_power(sol->rho, model, cfg.p0) - cfg.p_max));
                }
            }
        }
    }
    std::ostringstream d;
    d << branches << " Dinkelbach runs: " << bad_tau << " with decreasing tau, " << bad_stop
      << " not stopping at |F| <= 1e-5 within 100 iterations; worst |tr(Q) + P_c - P_max| = " << worst_balance;
    return {bad_tau == 0 && bad_stop == 0 && worst_balance <= 1e-6 && branches > 0, d.str()};
}

Verdict port_selection()
{
    const SystemConfig cfg;
    const auto model = LoadModel::default_model();
    const auto single = oracle::check_port_selection(cfg, model, cfg.m_ports, 1, 4, 100, cfg.rng_seed);
    const auto pair = oracle::check_port_selection(cfg, model, 8, 2, 4, 100, cfg.rng_seed);
    std::ostringstream d;
    d << "m_a=1: " << single.matches << "/100 exact, " << single.exceeded << " exceed; M=8 m_a=2: " << pair.matches
      << "/100 reach the optimum (need >= 90), " << pair.exceeded << " exceed, worst gap " << pair.worst_gap
      << " bits/s/Hz";
    return {single.matches == 100 && single.exceeded == 0 && pair.matches >= 90 && pair.exceeded == 0, d.str()};
}

Verdict alternation()
{
    const auto model = LoadModel::default_model();
    bool monotone = true, converged = true;
    int runs = 0, max_iters = 0;
    std::string ratios;
    bool fast = true;
    for (double snr : {0.0, 15.0})
    {
        SystemConfig cfg;
        cfg.p_max = p_max_for_snr(cfg, snr);
        std::vector<double> first_over_final;
        for (int trial = 0; trial < 21; ++trial)
        {
            const auto res = alternate_optimize(scenario_for_trial(cfg, 0, trial), cfg, model);
            ++runs;
            converged = converged && res.converged && res.record.outer_iterations <= outer_iteration_cap;
            max_iters = std::max(max_iters, res.record.outer_iterations);
            for (std::size_t k = 1; k < res.trace.size(); ++k)
                monotone = monotone && res.trace[k].objective >= res.trace[k - 1].objective - 1e-9;
            if (res.trace.size() < 2)
            {
                converged = false;
                continue;
            }
            first_over_final.push_back(res.trace[1].objective / res.trace.back().objective);
        }
        std::sort(first_over_final.begin(), first_over_final.end());
        const double median = first_over_final.empty() ? 0.0 : first_over_final[first_over_final.size() / 2];
        fast = fast && median >= 0.9;
        ratios += fmt("; %.0f dB median first/final %.4f", snr, median);
    }
    for (const auto &t : default_sweep().traces)
        for (std::size_t k = 1; k < t.points.size(); ++k)
            monotone = monotone && t.points[k].objective >= t.points[k - 1].objective - 1e-9;

    std::ostringstream d;
    d << runs << " runs, traces " << (monotone ? "non-decreasing" : "DECREASE") << ", "
      << (converged ? "all converged" : "some did not converge") << ", max " << max_iters
      << " outer iterations (cap 30)" << ratios;
    return {monotone && converged && fast, d.str()};
}

Verdict ordering()
{
    const SweepResult &sweep = default_sweep();
    const auto rows = summarize(sweep.records);
    std::map<SchemeId, std::vector<double>> curves;
    for (const auto &r : rows)
        curves[r.scheme].push_back(r.mean_rate);

    bool means_ok = true, increasing = true;
    for (std::size_t i = 0; i < sweep_snrs.size(); ++i)
        for (auto s : {SchemeId::random_fas_semantic, SchemeId::fas_non_semantic, SchemeId::conventional})
            means_ok = means_ok && curves[SchemeId::proposed][i] >= curves[s][i];
    for (const auto &[scheme, curve] : curves)
        for (std::size_t i = 1; i < curve.size(); ++i)
            increasing = increasing && curve[i] > curve[i - 1];

    std::map<std::pair<double, int>, std::map<SchemeId, double>> per_seed;
    for (const auto &r : sweep.records)
        per_seed[{r.snr_db, r.trial}][r.scheme] = r.rate;
    int seed_violations = 0;
    for (const auto &[key, rates] : per_seed)
        if (rates.at(SchemeId::proposed) < rates.at(SchemeId::fas_non_semantic))
            ++seed_violations;

    std::ostringstream d;
    d << "means at 0/15 dB: proposed " << curves[SchemeId::proposed].front() << "/"
      << curves[SchemeId::proposed].back() << ", random " << curves[SchemeId::random_fas_semantic].front() << "/"
      << curves[SchemeId::random_fas_semantic].back() << ", non-semantic "
      << curves[SchemeId::fas_non_semantic].front() << "/" << curves[SchemeId::fas_non_semantic].back()
      << ", conventional " << curves[SchemeId::conventional].front() << "/" << curves[SchemeId::conventional].back()
      << "; proposed mean >= baselines: " << (means_ok ? "yes" : "NO") << "; per-seed violations vs non-semantic: "
      << seed_violations << "; all curves strictly increasing: " << (increasing ? "yes" : "NO");
    return {means_ok && increasing && seed_violations == 0 && curves.size() == 4, d.str()};
}

Verdict load_algebra()
{
    const auto model = LoadModel::default_model();
    std::mt19937_64 rng(8);
    double worst = 0.0;
    int points = 0;
    for (int s = 1; s <= model.segment_count(); ++s)
    {
        const SegmentIndicator ind{s};
        const double lo = model.lower_break(ind), hi = model.upper_break(ind);
        std::uniform_real_distribution<double> u(lo, hi);
        for (int i = 0; i < 1000; ++i)
        {
            double rho = u(rng);
            if (rho <= lo || rho >= hi)
                rho = 0.5 * (lo + hi);
            worst = std::max(worst, std::abs(rho_from_power(compression_power(rho, model, 1.0), ind, model, 1.0) - rho));
            ++points;
        }
    }
    bool tiles = true;
    double worst_seam = 0.0;
    for (double p_max : {2.0, 10.0, 63.1})
    {
        const double p0 = 1.0;
        tiles = tiles && segment_trace_bounds(SegmentIndicator{1}, model, p_max, p0).hi == p_max;
        for (int s = 1; s < model.segment_count(); ++s)
        {
            const auto upper = segment_trace_bounds(SegmentIndicator{s}, model, p_max, p0);
            const auto lower = segment_trace_bounds(SegmentIndicator{s + 1}, model, p_max, p0);
            worst_seam = std::max(worst_seam, std::abs(lower.hi - upper.lo));
            tiles = tiles && !upper.empty() && !lower.empty() && lower.lo < lower.hi;
        }
        const auto last = segment_trace_bounds(SegmentIndicator{model.segment_count()}, model, p_max, p0);
        tiles = tiles && std::abs(last.lo - (p_max - load(model.min_ratio(), model) * p0)) <= 1e-12;
    }
    tiles = tiles && worst_seam <= 1e-12;
    return {worst <= 1e-12 && tiles,
            fmt("%.0f interior points, worst roundtrip error %.3g (<= 1e-12); worst seam gap %.3g", points, worst,
                worst_seam) +
                (tiles ? ", contiguous tiling" : ", tiling BROKEN")};
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism()
{
    const auto base = std::filesystem::temp_directory_path() / "fasc_acceptance_repeat";
    std::filesystem::remove_all(base);
    const SystemConfig cfg;
    const auto model = LoadModel::default_model();
    for (const char *run_dir : {"a", "b"})
    {
        const auto sweep = sweep_snr(sweep_snrs, sweep_trials, cfg, model);
        emit_outputs(sweep.records, sweep.traces, base / run_dir, false);
    }
    int identical = 0;
    std::size_t bytes = 0;
    for (const char *name : {"sweep.csv", "summary.csv", "convergence.csv"})
    {
        const auto a = read_file(base / "a" / name);
        const auto b = read_file(base / "b" / name);
        if (!a.empty() && a == b)
            ++identical;
        bytes += a.size();
    }
    std::filesystem::remove_all(base);
    return {identical == 3, fmt("%.0f/3 CSV files byte-identical across two sweeps (%.0f bytes)", identical,
                                static_cast<double>(bytes))};
}

} // namespace

int main()
{
    run(1, "Jensen bound", 120, jensen_bound);
    run(2, "expectation identity", 60, expectation);
    run(3, "inner-solver oracle", 120, inner_solver);
    run(4, "Dinkelbach behavior", 600, dinkelbach_behavior);
    run(5, "port-selection oracle", 180, port_selection);
    run(6, "alternation monotonicity", 600, alternation);
    run(7, "scheme ordering", 900, ordering);
    run(8, "semantic-load algebra", 60, load_algebra);
    run(9, "determinism", 900, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
