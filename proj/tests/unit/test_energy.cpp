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

#include "mimo/capacity/lower_bounds.hpp"
#include "mimo/capacity/upper_bounds.hpp"
#include "mimo/energy/energy_efficiency.hpp"

using namespace mimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MonteCarloConfig mc_config(std::size_t trials, std::uint64_t seed, std::size_t block = 100)
{
    MonteCarloConfig mc;
    mc.trials = trials;
    mc.block_size = block;
    mc.rng = RngStream(seed);
    return mc;
}

} // namespace

TEST_CASE("Energy - definition evaluated by hand")
{
    EnergyModel m;
    m.rho = 0.1;
    m.zeta = 1.5;
    m.omega_bs = 0.4;
    m.omega_ue = 0.25;
    m.frame = TddFrame{200, 10, 120, 20, 50};
    PowerConfig pw{0.8, 0.05};
    const double alpha_dl = 50.0 / 170.0;
    const double alpha_ul = 120.0 / 170.0;
    CHECK_THAT(m.alpha(Direction::Downlink), WithinRel(alpha_dl, 1e-15));
    CHECK_THAT(m.alpha(Direction::Downlink) + m.alpha(Direction::Uplink), WithinRel(1.0, 1e-15));
    const double pilots = 20.0 / 200.0 * 0.8 / 0.4 + 10.0 / 200.0 * 0.05 / 0.25;
    const double den_dl = alpha_dl * (pilots + 7 * 0.1 + 1.5) + 50.0 / 200.0 * 0.8 / 0.4;
    const double den_ul = alpha_ul * (pilots + 7 * 0.1 + 1.5) + 120.0 / 200.0 * 0.05 / 0.25;
    CHECK_THAT(ee(Direction::Downlink, 2.5, pw, m, 7), WithinRel(2.5 / den_dl, 1e-14));
    CHECK_THAT(ee(Direction::Uplink, 2.5, pw, m, 7), WithinRel(2.5 / den_ul, 1e-14));
    CHECK(ee(Direction::Uplink, 0.0, pw, m, 7) == 0.0);
    CHECK_THROWS_AS(ee(Direction::Uplink, -1.0, pw, m, 7), DomainError);
    m.zeta = 0.0;
    CHECK_THROWS_AS(ee(Direction::Uplink, 1.0, pw, m, 7), DomainError);
}

TEST_CASE("Energy - zero-power limits and EE bounds")
{
    EnergyModel m;
    HardwareProfile hw = HardwareProfile::uniform(0.0025);
    PowerConfig off{0.0, 0.0};
    const double se_ceiling = 0.45 * std::log2(401.0);
    CHECK_THAT(ee(Direction::Downlink, se_ceiling, off, m, 100), WithinAbs(3.8914, 1e-4));
    CHECK_THAT(ee_upper_bound(Direction::Downlink, hw, m), WithinAbs(3.8914, 1e-4));
    CHECK_THAT(ee_upper_bound(Direction::Uplink, hw, m), WithinAbs(3.8914, 1e-4));
    CHECK_THAT(ee_lower_bound(Direction::Uplink, hw, m), WithinAbs(3.4422, 1e-4));
    CHECK_THAT(power_scaling_limit(Direction::Downlink, hw, m.frame),
               WithinRel(0.45 * std::log2(1.0 + 1.0 / (0.005 + 0.0025 * 0.0025)), 1e-14));
    CHECK(ee_upper_bound(Direction::Downlink, HardwareProfile::ideal(), m) == kUnboundedCapacity);

    EnergyModel doubled = m;
    doubled.zeta = 4.0;
    CHECK_THAT(ee(Direction::Uplink, 2.0, off, doubled, 10), WithinRel(0.5 * ee(Direction::Uplink, 2.0, off, m, 10), 1e-14));
}

TEST_CASE("Energy - joint scaling of circuit and transmit energy")
{
    EnergyModel m;
    m.rho = 0.02;
    m.zeta = 1.98;
    EnergyModel s = m;
    s.rho *= 3.0;
    s.zeta *= 3.0;
    CHECK_THAT(ee(Direction::Downlink, 3.0, PowerConfig{0.0, 0.0}, s, 40),
               WithinRel(ee(Direction::Downlink, 3.0, PowerConfig{0.0, 0.0}, m, 40) / 3.0, 1e-14));
    CHECK_THAT(ee(Direction::Downlink, 3.0, PowerConfig{0.03, 0.06}, s, 40),
               WithinRel(ee(Direction::Downlink, 3.0, PowerConfig{0.01, 0.02}, m, 40) / 3.0, 1e-14));
}

TEST_CASE("Energy - power scaling law")
{
    PowerScalingLaw law{0.0, 0.0, 2.0, 3.0, 4};
    for (Index n : {1, 4, 100})
    {
        auto p = scaled_power(law, n);
        CHECK(p.p_bs == 2.0);
        CHECK(p.p_ue == 3.0);
    }
    law.t_ue = 0.5;
    CHECK_THAT(scaled_power(law, 16).p_ue, WithinRel(1.5, 1e-14));
    CHECK(law.in_validity_region() == false);
    law.t_ue = 0.4;
    law.t_bs = 0.3;
    CHECK(law.in_validity_region());
    law.t_bs = 0.7;
    CHECK_FALSE(law.in_validity_region());
    CHECK_THROWS_AS(scaled_power(law, 0), DomainError);
}

TEST_CASE("Energy - uplink rate under power scaling approaches its limit")
{
    const Index n = 4096;
    HardwareProfile hw = HardwareProfile::uniform(0.0025);
    PowerScalingLaw law{0.4, 0.4, 100.0, 100.0, 1};
    auto pw = scaled_power(law, n);
    auto r = CovarianceMatrix::identity(n);
    auto s = CovarianceMatrix::zero(n);
    auto e = lower_bound_mc(Direction::Uplink, r, s, DataInterference{}, pw, hw, PilotConfig::with_power(pw.p_ue),
                            TddFrame{}, mc_config(1000, 31));
    CHECK_THAT(e.value, WithinRel(3.4422, 0.10));
}

TEST_CASE("Energy - EE gap to the lower bound closes under power scaling")
{
    HardwareProfile hw = HardwareProfile::uniform(0.0025);
    EnergyModel m;
    PowerScalingLaw law{0.4, 0.4, 1.0, 1.0, 1};
    const double target = ee_lower_bound(Direction::Uplink, hw, m);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (Index n : {64, 1024, 16384})
    {
        auto pw = scaled_power(law, n);
        auto r = CovarianceMatrix::identity(n);
        auto s = CovarianceMatrix::zero(n);
        auto pilot = PilotConfig::with_power(pw.p_ue);
        auto op = build_lmmse(r, s, pilot, hw);
        auto phi = phi_moments(op, r, s, pilot, hw, mc_config(50000, 3, 1000));
        double se = lower_bound_asymptotic(Direction::Uplink, op, phi, hw, m.frame);
        double value = ee(Direction::Uplink, se, pw, m, n);
        CHECK(value <= ee_upper_bound(Direction::Uplink, hw, m));
        double gap = std::abs(value - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05 * target);
}

TEST_CASE("Energy - grid optimization")
{
    HardwareProfile hw = HardwareProfile::uniform(0.0025, 1.0);
    auto p_grid = log_grid(1e-3, 10.0, 17);
    std::vector<Index> n_grid{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    CapacityFunction upper = [&](double p, Index n) {
        return upper_bound_closed_form(Direction::Downlink, CovarianceMatrix::identity(n), PowerConfig{p, p}, hw,
                                       TddFrame{});
    };

    EnergyModel no_rho;
    auto opt0 = ee_optimize(Direction::Downlink, no_rho, p_grid, n_grid, upper);
    auto ridge0 = opt0.ridge();
    for (std::size_t j = 0; j + 1 < n_grid.size(); ++j)
        CHECK(opt0.surface[ridge0[j + 1]][j + 1] >= opt0.surface[ridge0[j]][j]);
    CHECK(opt0.best_n == n_grid.back());
    CHECK(opt0.best_ee <= ee_upper_bound(Direction::Downlink, hw, no_rho));
    for (const auto &row : opt0.surface)
        for (double v : row)
            CHECK(v <= ee_upper_bound(Direction::Downlink, hw, no_rho));

    EnergyModel with_rho;
    with_rho.rho = 0.2;
    with_rho.zeta = 1.8;
    auto opt1 = ee_optimize(Direction::Downlink, with_rho, p_grid, n_grid, upper);
    CHECK(opt1.best_n > n_grid.front());
    CHECK(opt1.best_n < n_grid.back());
    CHECK(opt1.best_ee == opt1.surface[std::find(p_grid.begin(), p_grid.end(), opt1.best_p) - p_grid.begin()]
                                      [std::find(n_grid.begin(), n_grid.end(), opt1.best_n) - n_grid.begin()]);
    CHECK(ee(Direction::Downlink, 4.0, PowerConfig{0.0, 0.0}, with_rho, 1000000) < 1e-4);

    // Parallel evaluation gives the same surface.
    ParallelFor reversed = [](std::size_t count, const std::function<void(std::size_t)> &body) {
        for (std::size_t i = count; i-- > 0;)
            body(i);
    };
    auto opt2 = ee_optimize(Direction::Downlink, with_rho, p_grid, n_grid, upper, reversed);
    CHECK(opt2.surface == opt1.surface);
    CHECK(opt2.best_n == opt1.best_n);
    CHECK_THROWS_AS(ee_optimize(Direction::Downlink, with_rho, {}, n_grid, upper), DomainError);
}

TEST_CASE("Energy - log grid")
{
    auto g = log_grid(0.01, 100.0, 5);
    REQUIRE(g.size() == 5);
    CHECK_THAT(g[0], WithinRel(0.01, 1e-15));
    CHECK_THAT(g[2], WithinRel(1.0, 1e-14));
    CHECK_THAT(g[4], WithinRel(100.0, 1e-14));
    CHECK(log_grid(3.0, 3.0, 1).size() == 1);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), DomainError);
}
