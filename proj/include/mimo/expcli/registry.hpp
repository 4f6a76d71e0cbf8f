// SPDX-License-Identifier: Apache-2.0
//
// mimo-sim: massive MIMO simulation with non-ideal transceiver hardware
// Copyright (C) 2026 The mimo-sim authors
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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mimo/expcli/context.hpp"
#include "mimo/expcli/experiments_capacity.hpp"
#include "mimo/expcli/experiments_energy.hpp"
#include "mimo/expcli/experiments_estimation.hpp"
#include "mimo/expcli/experiments_multicell.hpp"
#include "mimo/expcli/parallel.hpp"
#include "mimo/expcli/params.hpp"
#include "mimo/expcli/plot.hpp"
#include "mimo/expcli/table.hpp"

#ifndef MIMO_GIT_DESCRIBE
#define MIMO_GIT_DESCRIBE "unknown"
#endif

namespace mimo::expcli {

enum ExitCode : int
{
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalidConfig = 2,
    kExitNotConverged = 3
};

struct Experiment
{
    std::string id;
    std::string title;
    std::size_t default_trials = 10000;
    std::function<Params()> defaults;
    std::function<ResultTable(const Params &, RunContext &)> run;
    std::function<Derived(const Params &)> derived; // experiment-specific validate lines
};

inline const std::vector<Experiment> &registry()
{
    static const std::vector<Experiment> all = {
        {"fig3", "Estimation error versus SNR, LMMSE and conventional estimators", 10000, fig3_defaults, fig3_run, {}},
        {"fig4", "Estimation error versus pilot length", 10000, fig4_defaults, fig4_run, {}},
        {"fig5a", "Capacity bounds versus N at 20 dB", 10000, [] { return fig5_defaults(20.0); }, fig5_run, {}},
        {"fig5b", "Capacity bounds versus N at 0 dB", 20000, [] { return fig5_defaults(0.0); }, fig5_run, {}},
        {"fig6", "Capacity bounds versus N for several BS impairment levels", 10000, fig6_defaults, fig6_run, {}},
        {"fig7", "Energy efficiency versus N", 10000, fig7_defaults, fig7_run, {}},
        {"fig7power", "Transmit powers behind the energy-efficiency curves", 10000, fig7_defaults, fig7power_run, {}},
        {"fig8", "UL rate versus pilot-contaminator strength", 10000, fig8_defaults, fig8_run, {}},
        {"fig9", "Multi-cell UL rates with unique or reused pilots", 10000, fig9_defaults, fig9_run,
         [](const Params &p) {
             char buf[32];
             std::snprintf(buf, sizeof buf, "%.1f dB", serving_snr_db(p));
             return Derived{{"serving SNR", buf}};
         }},
        {"fig10", "Lower bound with BS impairments growing as N^tau", 10000, fig10_defaults, fig10_run, {}},
        {"contamination-sweep", "Contamination breaking point and negligibility condition", 10000,
         contamination_sweep_defaults, contamination_sweep_run, {}},
    };
    return all;
}

inline const Experiment &find_experiment(const std::string &id)
{
    for (const auto &e : registry())
        if (e.id == id)
            return e;
    throw ConfigError("unknown experiment '" + id + "'");
}

// Request as given on the command line; unset fields fall back to the
// config file, then to the registry defaults.
struct RunRequest
{
    std::string id;
    std::optional<std::string> config_path;
    std::optional<std::string> config_text;
    std::vector<std::pair<std::string, std::string>> sets; // --set key=value
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<double> rel_se_target;
};

struct ResolvedSpec
{
    const Experiment *experiment = nullptr;
    Params params;
    std::uint64_t seed = 1;
    std::size_t trials = 0;
    double rel_se_target = 0.01;
};

inline ResolvedSpec resolve(const RunRequest &req)
{
    ResolvedSpec s;
    s.experiment = &find_experiment(req.id);
    s.params = s.experiment->defaults();
    s.trials = s.experiment->default_trials;
    RunSettings file;
    if (req.config_path || req.config_text)
    {
        toml::table doc = req.config_path ? parse_toml_file(*req.config_path) : parse_toml_text(*req.config_text);
        for (const auto &[k, node] : doc)
        {
            std::string name(k.str());
            const toml::table *tbl = node.as_table();
            if (!tbl)
                throw ConfigError("top-level key '" + name + "' is not allowed; use a table per experiment");
            const Experiment &e = find_experiment(name);
            if (&e == s.experiment)
                apply_table(*tbl, name, s.params, file);
            else
            {
                // Tables of other experiments are checked but not applied.
                Params other = e.defaults();
                RunSettings ignored;
                apply_table(*tbl, name, other, ignored);
            }
        }
    }
    for (const auto &[k, v] : req.sets)
        s.params.assign_text(k, v);
    if (file.seed)
        s.seed = *file.seed;
    if (file.trials)
        s.trials = *file.trials;
    if (req.seed)
        s.seed = *req.seed;
    if (req.trials)
        s.trials = *req.trials;
    if (req.rel_se_target)
        s.rel_se_target = *req.rel_se_target;
    if (s.trials < 2)
        throw ConfigError("trials must be at least 2");
    if (!(s.rel_se_target > 0.0))
        throw ConfigError("the standard-error target must be positive");
    return s;
}

struct RunOutcome
{
    ResultTable table;
    int exit_code = kExitOk;
    std::vector<std::string> unconverged;
    double wall_seconds = 0.0;
};

inline void stamp_metadata(ResultTable &t, const ResolvedSpec &s, std::size_t unconverged, std::size_t estimates)
{
    t.set_meta("experiment", s.experiment->id);
    t.set_meta("title", s.experiment->title);
    t.set_meta("seed", std::to_string(s.seed));
    t.set_meta("trials", std::to_string(s.trials));
    t.set_meta("rel_se_target", format_number(s.rel_se_target));
    t.set_meta("git_describe", MIMO_GIT_DESCRIBE);
    for (const auto &p : s.params.items())
        t.set_meta("param." + p.key, value_to_string(p.value));
    t.set_meta("estimates_above_target", std::to_string(unconverged) + " of " + std::to_string(estimates));
}

// Runs the experiment; with an output directory writes <out>/<id>.csv,
// <out>/<id>.png and <out>/<id>.run.txt (wall time and convergence notes).
inline RunOutcome run_experiment(const ResolvedSpec &s, const std::optional<std::string> &out_dir)
{
    RunContext ctx;
    ctx.seed = s.seed;
    ctx.trials = s.trials;
    ctx.rel_se_target = s.rel_se_target;
    ctx.parallel = make_parallel_for(worker_count());
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    out.table = s.experiment->run(s.params, ctx);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.unconverged = ctx.unconverged;
    out.exit_code = ctx.unconverged.empty() ? kExitOk : kExitNotConverged;
    stamp_metadata(out.table, s, ctx.unconverged.size(), ctx.estimates);
    if (out_dir)
    {
        std::filesystem::create_directories(*out_dir);
        const std::string base = (std::filesystem::path(*out_dir) / s.experiment->id).string();
        write_csv_file(base + ".csv", out.table);
        render_plot(out.table, base + ".png");
        std::ofstream log(base + ".run.txt");
        log << "wall_seconds: " << format_number(out.wall_seconds) << '\n';
        for (const auto &u : out.unconverged)
            log << "above_target: " << u << '\n';
    }
    return out;
}

// Dry-run echo: parameters, SNRs, frame fractions and the kappa/EVM table.
inline std::string validate_report(const ResolvedSpec &s)
{
    std::ostringstream os;
    const Params &p = s.params;
    char buf[128];
    os << "experiment: " << s.experiment->id << '\n'
       << "title: " << s.experiment->title << '\n'
       << "seed: " << s.seed << '\n'
       << "trials: " << s.trials << '\n'
       << "rel_se_target: " << format_number(s.rel_se_target) << '\n'
       << "parameters:\n";
    for (const auto &it : p.items())
        os << "  " << it.key << " = " << value_to_string(it.value) << " [" << it.unit << "]  " << it.help << '\n';

    os << "derived:\n";
    for (const auto &it : p.items())
    {
        if (it.unit != "dB")
            continue;
        std::vector<double> vals;
        if (auto *v = std::get_if<double>(&it.value))
            vals = {*v};
        else if (auto *vs = std::get_if<std::vector<double>>(&it.value))
            vals = *vs;
        for (double v : vals)
        {
            std::snprintf(buf, sizeof buf, "  %s: %.1f dB = %.6g (linear)\n", it.key.c_str(), v, db_to_linear(v));
            os << buf;
        }
    }
    if (p.has("t_coher"))
    {
        TddFrame f = frame_from(p);
        const double ulp = f.pilot_fraction(Direction::Uplink), uld = f.data_fraction(Direction::Uplink);
        const double dlp = f.pilot_fraction(Direction::Downlink), dld = f.data_fraction(Direction::Downlink);
        std::snprintf(buf, sizeof buf, "  frame fractions: UL pilot %.4g, UL data %.4g, DL pilot %.4g, DL data %.4g\n",
                      ulp, uld, dlp, dld);
        os << buf;
        std::snprintf(buf, sizeof buf, "  frame sum: %.1f\n", ulp + uld + dlp + dld);
        os << buf;
    }
    if (s.experiment->derived)
        for (const auto &[k, v] : s.experiment->derived(p))
            os << "  " << k << ": " << v << '\n';

    os << "kappa/EVM:\n";
    for (const auto &it : p.items())
    {
        if (it.key.find("kappa") == std::string::npos)
            continue;
        std::vector<double> vals;
        if (auto *v = std::get_if<double>(&it.value))
            vals = {*v};
        else if (auto *vs = std::get_if<std::vector<double>>(&it.value))
            vals = *vs;
        for (double k : vals)
        {
            require(k >= 0.0, it.key + " must be non-negative");
            std::snprintf(buf, sizeof buf, "  %s: kappa %.6g -> EVM %.6g (%.3g %%)\n", it.key.c_str(), k, evm(k),
                          100.0 * evm(k));
            os << buf;
        }
    }
    return os.str();
}

inline std::string list_report()
{
    std::ostringstream os;
    for (const auto &e : registry())
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-20s %s\n", e.id.c_str(), e.title.c_str());
        os << buf;
    }
    return os.str();
}

} // namespace mimo::expcli
