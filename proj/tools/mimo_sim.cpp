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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "mimo/expcli/registry.hpp"

namespace {

using namespace mimo::expcli;

struct Options
{
    std::string id;
    std::string config;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double rel_se_target = 0.0;
    std::string out = ".";
};

void add_spec_options(CLI::App *cmd, Options &o)
{
    cmd->add_option("--experiment,-e", o.id, "experiment id (see `list`)")->required();
    cmd->add_option("--config,-c", o.config, "TOML file with one flat table per experiment");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per estimate");
    cmd->add_option("--rel-se", o.rel_se_target, "relative standard-error target");
    cmd->add_option("--set", o.sets, "parameter override key=value (lists comma-separated)");
}

RunRequest request_from(const Options &o, const CLI::App *cmd)
{
    RunRequest r;
    r.id = o.id;
    if (cmd->count("--config"))
        r.config_path = o.config;
    if (cmd->count("--seed"))
        r.seed = o.seed;
    if (cmd->count("--trials"))
        r.trials = o.trials;
    if (cmd->count("--rel-se"))
        r.rel_se_target = o.rel_se_target;
    for (const auto &s : o.sets)
    {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        r.sets.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return r;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mimo-sim: massive MIMO experiments with non-ideal transceiver hardware"};
    app.require_subcommand(1);
    Options opt;
    auto *run = app.add_subcommand("run", "run an experiment and write <out>/<id>.csv and .png");
    add_spec_options(run, opt);
    run->add_option("--out,-o", opt.out, "output directory");
    auto *validate = app.add_subcommand("validate", "echo parameters and derived quantities without running");
    add_spec_options(validate, opt);
    app.add_subcommand("list", "list registered experiments");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }

    try
    {
        if (app.got_subcommand("list"))
        {
            std::cout << list_report();
            return kExitOk;
        }
        const CLI::App *cmd = app.got_subcommand("run") ? run : validate;
        ResolvedSpec spec = resolve(request_from(opt, cmd));
        if (cmd == validate)
        {
            std::cout << validate_report(spec);
            return kExitOk;
        }
        RunOutcome out = run_experiment(spec, opt.out);
        std::printf("%s: %zu rows written to %s (%.2f s)\n", spec.experiment->id.c_str(), out.table.size(),
                    opt.out.c_str(), out.wall_seconds);
        if (out.exit_code == kExitNotConverged)
        {
            std::fprintf(stderr, "%zu estimates above the standard-error target:\n", out.unconverged.size());
            for (const auto &u : out.unconverged)
                std::fprintf(stderr, "  %s\n", u.c_str());
        }
        return out.exit_code;
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitInvalidConfig;
    }
    catch (const mimo::DomainError &e)
    {
        std::fprintf(stderr, "invalid parameter: %s\n", e.what());
        return kExitInvalidConfig;
    }
    catch (const mimo::DimensionError &e)
    {
        std::fprintf(stderr, "invalid parameter: %s\n", e.what());
        return kExitInvalidConfig;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
}
