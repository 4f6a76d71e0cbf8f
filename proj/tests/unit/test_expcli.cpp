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

#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mimo/expcli/registry.hpp"

using namespace mimo;
using namespace mimo::expcli;
using Catch::Matchers::ContainsSubstring;

namespace {

ResolvedSpec spec_for(const std::string &id, std::vector<std::pair<std::string, std::string>> sets = {},
                      std::optional<std::uint64_t> trials = {})
{
    RunRequest r;
    r.id = id;
    r.sets = std::move(sets);
    r.trials = trials;
    return resolve(r);
}

std::string run_csv(const ResolvedSpec &s, ParallelFor pf = {})
{
    RunContext ctx;
    ctx.seed = s.seed;
    ctx.trials = s.trials;
    ctx.rel_se_target = s.rel_se_target;
    ctx.parallel = std::move(pf);
    ResultTable t = s.experiment->run(s.params, ctx);
    stamp_metadata(t, s, ctx.unconverged.size(), ctx.estimates);
    return to_csv(t);
}

} // namespace

TEST_CASE("Expcli - number formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(format_number(NAN) == "nan");
}

TEST_CASE("Expcli - CSV layout")
{
    ResultTable t({{"n", "antennas"}, {"rate", "bit/channel use"}});
    t.add_row({1, 0.5});
    t.add_row({2, INFINITY});
    t.set_meta("seed", "7");
    t.set_meta("trials", "100");
    t.set_meta("seed", "8");
    CHECK(to_csv(t) == "# seed: 8\n# trials: 100\nn[antennas],rate[bit/channel use]\n1,0.5\n2,inf\n");
    CHECK_THROWS_AS(t.add_row({1.0}), DimensionError);
    CHECK(t.column("rate")[0] == 0.5);
    CHECK(t.select({{"n", 2.0}}) == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(t.index_of("missing"), DomainError);
}

TEST_CASE("Expcli - every column carries a unit")
{
    for (const auto &e : registry())
    {
        INFO(e.id);
        Params p = e.defaults();
        for (const auto &it : p.items())
            CHECK(!it.unit.empty());
    }
    ResolvedSpec s = spec_for("fig3");
    RunContext ctx;
    ResultTable t = s.experiment->run(s.params, ctx);
    for (const auto &c : t.columns())
        CHECK(!c.unit.empty());
}

TEST_CASE("Expcli - typed parameters")
{
    Params p;
    p.add("x", 1.5, "-", "real")
        .add("k", std::int64_t{3}, "-", "integer")
        .add("mode", std::string("DL"), "-", "choice", {"DL", "UL"})
        .add("xs", std::vector<double>{1.0}, "-", "reals")
        .add("ks", std::vector<std::int64_t>{1}, "-", "integers");
    p.assign("x", std::int64_t{2});
    CHECK(p.real("x") == 2.0);
    CHECK_THROWS_AS(p.assign("k", 2.5), ConfigError);
    CHECK_THROWS_AS(p.assign("mode", std::string("XX")), ConfigError);
    CHECK_THROWS_AS(p.assign("nope", 1.0), ConfigError);
    p.assign_text("xs", "1, 2.5,1e-3");
    CHECK(p.reals("xs") == std::vector<double>{1.0, 2.5, 1e-3});
    p.assign_text("ks", "[4,8]");
    CHECK(p.integers("ks") == std::vector<std::int64_t>{4, 8});
    CHECK_THROWS_AS(p.assign_text("k", "3x"), ConfigError);
    CHECK_THROWS_AS(p.assign_text("x", ""), ConfigError);
    p.assign_text("mode", "UL");
    CHECK(p.text("mode") == "UL");
    CHECK(value_to_string(p.items()[3].value) == "[1, 2.5, 0.001]");
}

TEST_CASE("Expcli - configuration precedence")
{
    RunRequest r;
    r.id = "fig5a";
    r.config_text = "[fig5a]\nsnr = 10\nkappas = [0.01]\nseed = 5\ntrials = 3000\n\n[fig3]\ncorr = 0.5\n";
    ResolvedSpec s = resolve(r);
    CHECK(s.params.real("snr") == 10.0);
    CHECK(s.params.reals("kappas") == std::vector<double>{0.01});
    CHECK(s.seed == 5);
    CHECK(s.trials == 3000);
    CHECK(s.params.integers("n_grid").back() == 512);

    r.sets = {{"snr", "15"}};
    r.seed = 9;
    r.trials = 4000;
    s = resolve(r);
    CHECK(s.params.real("snr") == 15.0);
    CHECK(s.seed == 9);
    CHECK(s.trials == 4000);

    RunRequest d;
    d.id = "fig7";
    s = resolve(d);
    CHECK(s.trials == 10000);
    CHECK(s.seed == 1);
    d.id = "fig5b";
    CHECK(resolve(d).trials == 20000);
}

TEST_CASE("Expcli - configuration errors")
{
    auto bad = [](const std::string &id, const std::string &toml) {
        RunRequest r;
        r.id = id;
        r.config_text = toml;
        return resolve(r);
    };
    CHECK_THROWS_AS(bad("fig3", "[fig3]\nunknown_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig99]\ncorr = 1\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "corr = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig4]\ntypo = 1\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig3]\nn_antennas = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig3]\n[fig3.sub]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig3\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig3", "[fig3]\nseed = -1\n"), ConfigError);
    CHECK_THROWS_AS(bad("fig5a", "[fig5a]\ndirection = \"sideways\"\n"), ConfigError);
    CHECK_THROWS_AS(spec_for("nope"), ConfigError);
    CHECK_THROWS_AS(spec_for("fig3", {{"corr2", "1"}}), ConfigError);
    CHECK_THROWS_AS(spec_for("fig3", {}, 1), ConfigError);
}

TEST_CASE("Expcli - validate echoes derived quantities")
{
    std::string fig9 = validate_report(spec_for("fig9"));
    CHECK_THAT(fig9, ContainsSubstring("serving SNR: 32.0 dB"));
    CHECK_THAT(fig9, ContainsSubstring("frame sum: 1.0"));
    CHECK_THAT(fig9, ContainsSubstring("UL pilot 0.05, UL data 0.45, DL pilot 0.05, DL data 0.45"));

    std::string fig4 = validate_report(spec_for("fig4"));
    CHECK_THAT(fig4, ContainsSubstring("kappa 0.0025 -> EVM 0.05"));
    CHECK_THAT(fig4, ContainsSubstring("snr_db: 30.0 dB = 1000 (linear)"));

    CHECK_THROWS_AS(validate_report(spec_for("fig9", {{"ring_radius", "300"}})), DomainError);
    CHECK_THROWS_AS(validate_report(spec_for("fig6", {{"kappa_ue", "-1"}})), DomainError);
    CHECK_THROWS_AS(validate_report(spec_for("fig5a", {{"t_ul_data", "400"}})), DomainError);
}

TEST_CASE("Expcli - runs are reproducible")
{
    ResolvedSpec s = spec_for("fig3");
    CHECK(run_csv(s) == run_csv(s));

    ResolvedSpec mc = spec_for("fig4", {{"pilot_lengths", "1,4"}, {"snr_db", "30"}}, 512);
    std::string seq = run_csv(mc);
    CHECK(seq == run_csv(mc, make_parallel_for(3)));
    mc.seed = 2;
    CHECK(seq != run_csv(mc));
}

TEST_CASE("Expcli - bounds table converges at large N")
{
    ResolvedSpec s = spec_for("fig5a", {{"n_grid", "512"}, {"kappas", "0.0025"}}, 2000);
    RunContext ctx;
    ctx.trials = s.trials;
    ResultTable t = s.experiment->run(s.params, ctx);
    REQUIRE(t.size() == 1);
    const double lo = t.at(0, "lower"), up = t.at(0, "upper_closed_form");
    CHECK(lo <= up);

    // With kappa_t^UE > 0 the lower bound tends to the phi-moment limit, not the upper bound.
    const Index n = 512;
    HardwareProfile hw = HardwareProfile::uniform(0.0025);
    CovarianceMatrix r = CovarianceMatrix::identity(n), z = CovarianceMatrix::zero(n);
    PilotConfig pilot = PilotConfig::with_power(100.0);
    LmmseOperator op = build_lmmse(r, z, pilot, hw);
    MonteCarloConfig mc;
    mc.trials = 100000;
    mc.rng = RngStream(3, 0);
    const double limit = lower_bound_asymptotic(Direction::Downlink, op, phi_moments(op, r, z, pilot, hw, mc), hw,
                                                TddFrame{});
    CHECK(std::abs(lo - limit) / limit < 0.05);
    CHECK(up > limit);
    CHECK(t.at(0, "upper_perfect_csi") <= up + 3 * t.at(0, "upper_perfect_csi_se"));
    CHECK(ctx.unconverged.empty());
}

TEST_CASE("Expcli - EE without per-antenna power is non-decreasing in N")
{
    ResolvedSpec s = spec_for("fig7",
                              {{"n_grid", "1,2,4,8,16,32,64,128"},
                               {"kappas", "0.0025"},
                               {"circuit_totals", "2"},
                               {"rho_shares", "0"},
                               {"power_points", "15"}},
                              1000);
    RunContext ctx;
    ctx.trials = s.trials;
    ResultTable t = s.experiment->run(s.params, ctx);
    auto ee_opt = t.column("ee_optimized");
    REQUIRE(ee_opt.size() == 8);
    for (std::size_t k = 0; k + 1 < ee_opt.size(); ++k)
        CHECK(ee_opt[k + 1] >= ee_opt[k]);
    const double ceiling = t.at(0, "ee_ceiling");
    CHECK(ceiling == Catch::Approx(3.8914).epsilon(1e-4));
    for (double v : ee_opt)
        CHECK(v < ceiling);
    for (std::size_t k = 0; k < t.size(); ++k)
        CHECK(t.at(k, "ee_fixed") <= t.at(k, "ee_optimized"));
}

TEST_CASE("Expcli - power table follows the scaling law")
{
    ResolvedSpec s = spec_for("fig7power",
                              {{"n_grid", "1,4,16"},
                               {"kappas", "0.0025"},
                               {"circuit_totals", "0.02"},
                               {"rho_shares", "0.1"},
                               {"power_points", "9"},
                               {"bound", "upper"}});
    RunContext ctx;
    ResultTable t = s.experiment->run(s.params, ctx);
    REQUIRE(t.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
    {
        CHECK(t.at(k, "p_fixed") == t.at(0, "p_optimized"));
        CHECK(t.at(k, "p_scaled") == Catch::Approx(t.at(0, "p_fixed") / std::sqrt(t.at(k, "n"))));
        CHECK(t.at(k, "p_optimized") <= 0.0222);
    }
}

TEST_CASE("Expcli - non-convergence is reported")
{
    ResolvedSpec s = spec_for("fig5b", {{"n_grid", "4"}, {"kappas", "0"}}, 1000);
    s.rel_se_target = 1e-9;
    RunOutcome out = run_experiment(s, std::nullopt);
    CHECK(out.exit_code == kExitNotConverged);
    CHECK(out.unconverged.size() == 2);
    CHECK_THAT(out.table.meta().back().second, ContainsSubstring("2 of 2"));

    ResolvedSpec small = spec_for("fig5b", {{"n_grid", "4"}}, 10);
    CHECK_THROWS_AS(run_experiment(small, std::nullopt), DomainError);
}

TEST_CASE("Expcli - files are written")
{
    auto dir = std::filesystem::temp_directory_path() / "mimo_expcli_test";
    std::filesystem::remove_all(dir);
    RunOutcome out = run_experiment(spec_for("fig3"), dir.string());
    CHECK(out.exit_code == kExitOk);
    std::ifstream csv(dir / "fig3.csv");
    std::string first;
    std::getline(csv, first);
    CHECK(first == "# experiment: fig3");
    std::ifstream png(dir / "fig3.png", std::ios::binary);
    char sig[8] = {};
    png.read(sig, 8);
    CHECK(std::string(sig + 1, 3) == "PNG");
    CHECK(std::filesystem::exists(dir / "fig3.run.txt"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("Expcli - worker pool")
{
    ParallelFor pf = make_parallel_for(4);
    std::vector<std::atomic<int>> hits(1000);
    pf(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto &h : hits)
        CHECK(h.load() == 1);
    CHECK_THROWS_AS(pf(100, [](std::size_t i) {
                        if (i == 37)
                            throw DomainError("boom");
                    }),
                    DomainError);
    CHECK(!make_parallel_for(1));

    ::setenv("MIMO_SIM_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    ::setenv("MIMO_SIM_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    ::unsetenv("MIMO_SIM_THREADS");
}

TEST_CASE("Expcli - breaking point interpolation")
{
    ResultTable t({{"kappa", "-"}, {"gain", "dB"}, {"rate", "b"}, {"rate_free", "b"}});
    // Free 4, fully contaminated 0, midpoint 2 crossed between -20 and -10 dB.
    t.add_row({0.01, -30, 4.0, 4.0});
    t.add_row({0.01, -20, 3.0, 4.0});
    t.add_row({0.01, -10, 1.0, 4.0});
    t.add_row({0.01, 0, 0.0, 4.0});
    CHECK(breaking_point_db(t, 0.01) == Catch::Approx(-15.0));
    CHECK(std::isnan(breaking_point_db(t, 0.5)));
}

TEST_CASE("Expcli - correlated error floor")
{
    HardwareProfile hw = estimation_profile(0.0025);
    CHECK(relative_error_floor(CovarianceMatrix::identity(8, 2.0), hw) ==
          Catch::Approx(1.0 - 1.0 / 1.005).epsilon(1e-12));
    CovarianceMatrix r = exponential_covariance(20, 0.7);
    LmmseOperator op = build_lmmse(r, CovarianceMatrix::zero(20), PilotConfig::with_power(1e10), hw);
    CHECK(relative_mse(op.mse, r) == Catch::Approx(relative_error_floor(r, hw)).epsilon(1e-6));
}
