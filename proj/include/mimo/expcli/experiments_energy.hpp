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

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mimo/capacity/lower_bounds.hpp"
#include "mimo/capacity/upper_bounds.hpp"
#include "mimo/energy/energy_efficiency.hpp"
#include "mimo/expcli/experiments_capacity.hpp"
#include "mimo/expcli/experiments_estimation.hpp"

namespace mimo::expcli {

// ---- Energy efficiency versus N ----------------------------------------

inline Params fig7_defaults()
{
    Params p;
    p.add("n_grid", doubling_grid(512), "antennas", "BS antenna counts; the first entry fixes the reference power")
        .add("kappas", std::vector<double>{0.0025, 0.0}, "-", "common kappa at BS and UE")
        .add("circuit_totals", std::vector<double>{2.0, 0.02}, "uJ/channel use", "zeta + rho")
        .add("rho_shares", std::vector<double>{0.0, 0.01, 0.1}, "-", "rho / (zeta + rho)")
        .add("p_max", 0.0222, "uJ/channel use", "maximal transmit power")
        .add("snr_at_p_max", 20.0, "dB", "SNR at p_max; sets sigma^2 = p_max / SNR")
        .add("corr", 0.7, "-", "exponential correlation coefficient r")
        .add("omega", 0.3, "-", "amplifier efficiency at BS and UE")
        .add("power_points", std::int64_t{27}, "-", "power grid p_max 2^(-k/2), k = 0, 1, ...")
        .add("scaling_exponent", 0.5, "-", "t in p(N) = p(N_1) (N/N_1)^(-t)")
        .add("bound", std::string("lower"), "-", "capacity bound entering the EE", {"lower", "upper"})
        .add("direction", std::string("DL"), "-", "link direction", {"DL", "UL"});
    add_frame_params(p);
    return p;
}

struct EeCurve
{
    double kappa = 0.0, total = 0.0, share = 0.0;
    std::vector<Index> n;
    std::vector<double> ee_opt, ee_fixed, ee_scaled, p_opt, p_fixed, p_scaled;
    double ceiling = 0.0;
};

// EE with the power optimized per N, fixed at the optimum of the first grid
// entry, and scaled down from that value as N^-t.
inline std::vector<EeCurve> ee_curves(const Params &p, RunContext &ctx)
{
    const Direction dir = direction_from(p);
    const TddFrame frame = frame_from(p);
    const double p_max = p.real("p_max");
    require(p_max > 0.0, "p_max must be positive");
    const double sigma2 = p_max / db_to_linear(p.real("snr_at_p_max"));
    const double corr = p.real("corr");
    const double omega = p.real("omega");
    const double t_exp = p.real("scaling_exponent");
    const bool lower = p.text("bound") == "lower";
    const std::int64_t points = p.integer("power_points");
    require(points >= 1, "power_points must be at least 1");

    std::vector<double> p_grid;
    for (std::int64_t k = 0; k < points; ++k)
        p_grid.push_back(p_max * std::pow(2.0, -0.5 * static_cast<double>(k)));
    std::vector<Index> n_grid;
    for (auto n : p.integers("n_grid"))
    {
        require(n >= 1, "antenna counts must be at least 1");
        n_grid.push_back(n);
    }
    require(!n_grid.empty(), "n_grid must not be empty");

    std::map<Index, CovarianceMatrix> cov;
    auto covariance = [&](Index n) -> const CovarianceMatrix & {
        auto it = cov.find(n);
        if (it == cov.end())
            it = cov.emplace(n, exponential_covariance(n, corr)).first;
        return it->second;
    };

    std::map<std::tuple<double, Index, double>, double> memo;
    auto capacity = [&](double kappa, double pw, Index n) {
        auto key = std::make_tuple(kappa, n, pw);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        HardwareProfile hw = HardwareProfile::uniform(kappa, sigma2);
        const CovarianceMatrix &r = covariance(n);
        PowerConfig power{pw, pw};
        double se = 0.0;
        if (lower)
            se = ctx.track(lower_bound_mc(dir, r, CovarianceMatrix::zero(n), {}, power, hw,
                                          PilotConfig::with_power(pw), frame, ctx.mc(static_cast<std::uint64_t>(n))),
                           "kappa " + format_number(kappa) + ", p " + format_number(pw) + ", N " + std::to_string(n));
        else
            se = upper_bound_closed_form(dir, r, power, hw, frame);
        memo.emplace(key, se);
        return se;
    };

    std::vector<EeCurve> out;
    for (double kappa : p.reals("kappas"))
    {
        HardwareProfile::uniform(kappa, sigma2).validate();
        for (double total : p.reals("circuit_totals"))
            for (double share : p.reals("rho_shares"))
            {
                require(share >= 0.0 && share < 1.0, "rho shares must lie in [0, 1)");
                EnergyModel model{total * share, total * (1.0 - share), omega, omega, frame};
                EeOptimum opt = ee_optimize(dir, model, p_grid, n_grid,
                                            [&](double pw, Index n) { return capacity(kappa, pw, n); });
                auto ridge = opt.ridge();
                EeCurve c;
                c.kappa = kappa;
                c.total = total;
                c.share = share;
                c.ceiling = ee_upper_bound(dir, HardwareProfile::uniform(kappa, sigma2), model);
                const std::size_t fixed = ridge[0];
                for (std::size_t j = 0; j < n_grid.size(); ++j)
                {
                    const Index n = n_grid[j];
                    const double ps = p_grid[fixed] *
                                      std::pow(static_cast<double>(n) / static_cast<double>(n_grid[0]), -t_exp);
                    PowerConfig scaled{ps, ps};
                    c.n.push_back(n);
                    c.ee_opt.push_back(opt.surface[ridge[j]][j]);
                    c.ee_fixed.push_back(opt.surface[fixed][j]);
                    c.ee_scaled.push_back(ee(dir, capacity(kappa, ps, n), scaled, model, n));
                    c.p_opt.push_back(p_grid[ridge[j]]);
                    c.p_fixed.push_back(p_grid[fixed]);
                    c.p_scaled.push_back(ps);
                }
                out.push_back(std::move(c));
            }
    }
    return out;
}

inline ResultTable fig7_run(const Params &p, RunContext &ctx)
{
    ResultTable t({{"kappa", "-"},
                   {"circuit_total", "uJ/channel use"},
                   {"rho_share", "-"},
                   {"n", "antennas"},
                   {"ee_optimized", "bit/uJ"},
                   {"ee_fixed", "bit/uJ"},
                   {"ee_scaled", "bit/uJ"},
                   {"ee_ceiling", "bit/uJ"}});
    for (const auto &c : ee_curves(p, ctx))
        for (std::size_t j = 0; j < c.n.size(); ++j)
            t.add_row({c.kappa, c.total, c.share, static_cast<double>(c.n[j]), c.ee_opt[j], c.ee_fixed[j],
                       c.ee_scaled[j], c.ceiling});
    t.plot = {"n", {"ee_optimized", "ee_fixed", "ee_scaled"}, {"kappa", "circuit_total", "rho_share"}, true, true};
    return t;
}

inline ResultTable fig7power_run(const Params &p, RunContext &ctx)
{
    ResultTable t({{"kappa", "-"},
                   {"circuit_total", "uJ/channel use"},
                   {"rho_share", "-"},
                   {"n", "antennas"},
                   {"p_optimized", "uJ/channel use"},
                   {"p_fixed", "uJ/channel use"},
                   {"p_scaled", "uJ/channel use"}});
    for (const auto &c : ee_curves(p, ctx))
        for (std::size_t j = 0; j < c.n.size(); ++j)
            t.add_row({c.kappa, c.total, c.share, static_cast<double>(c.n[j]), c.p_opt[j], c.p_fixed[j],
                       c.p_scaled[j]});
    t.plot = {"n", {"p_optimized", "p_fixed", "p_scaled"}, {"kappa", "circuit_total", "rho_share"}, true, true};
    return t;
}

} // namespace mimo::expcli
