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
#include <functional>
#include <vector>

#include "mimo/capacity/frame.hpp"
#include "mimo/impairments/hardware.hpp"
#include "mimo/numerics/monte_carlo.hpp"

namespace mimo {

// Circuit and amplifier parameters; energies in uJ per channel use.
struct EnergyModel
{
    double rho = 0.0;
    double zeta = 2.0;
    double omega_bs = 0.3;
    double omega_ue = 0.3;
    TddFrame frame{};

    double alpha(Direction d) const
    {
        double total = frame.t_dl_data + frame.t_ul_data;
        require(total > 0.0, "frame has no data channel uses");
        return (d == Direction::Downlink ? frame.t_dl_data : frame.t_ul_data) / total;
    }

    void validate() const
    {
        frame.validate();
        require(rho >= 0.0, "rho must be non-negative");
        require(zeta > 0.0, "zeta must be positive");
        require(omega_bs > 0.0 && omega_bs <= 1.0, "omega_bs must lie in (0, 1]");
        require(omega_ue > 0.0 && omega_ue <= 1.0, "omega_ue must lie in (0, 1]");
    }
};

// Average consumed energy per channel use attributed to one direction.
inline double consumed_energy(Direction dir, const PowerConfig &power, const EnergyModel &model, Index n)
{
    model.validate();
    power.validate();
    require(n >= 1, "N must be at least 1");
    const double t = model.frame.t_coher;
    const double pilots = model.frame.t_dl_pilot / t * power.p_bs / model.omega_bs +
                          model.frame.t_ul_pilot / t * power.p_ue / model.omega_ue;
    const double data = dir == Direction::Downlink ? model.frame.t_dl_data / t * power.p_bs / model.omega_bs
                                                   : model.frame.t_ul_data / t * power.p_ue / model.omega_ue;
    return model.alpha(dir) * (pilots + static_cast<double>(n) * model.rho + model.zeta) + data;
}

// Spectral efficiency over consumed energy, bit/uJ.
inline double ee(Direction dir, double spectral_efficiency, const PowerConfig &power, const EnergyModel &model,
                 Index n)
{
    require(spectral_efficiency >= 0.0, "spectral efficiency must be non-negative");
    return spectral_efficiency / consumed_energy(dir, power, model, n);
}

// Ceiling on the EE: log2(1 + 1/kappa_ue) / ((T/T_data) alpha zeta).
inline double ee_upper_bound(Direction dir, const HardwareProfile &profile, const EnergyModel &model)
{
    model.validate();
    const double kappa = dir == Direction::Downlink ? profile.kappa_r_ue : profile.kappa_t_ue;
    if (kappa <= 0.0)
        return kUnboundedCapacity;
    return model.frame.data_fraction(dir) * std::log2(1.0 + 1.0 / kappa) / (model.alpha(dir) * model.zeta);
}

// Rate limit under power scaling with t_UE < 1/2 (and t_BS + t_UE < 1 in the DL).
inline double power_scaling_limit(Direction dir, const HardwareProfile &profile, const TddFrame &frame)
{
    frame.validate();
    const double kt = profile.kappa_t_ue;
    const double kr = profile.kappa_r_ue;
    const double den = dir == Direction::Downlink ? kr + kt + kr * kt : 2.0 * kt + kt * kt;
    if (den <= 0.0)
        return kUnboundedCapacity;
    return frame.data_fraction(dir) * std::log2(1.0 + 1.0 / den);
}

// EE achieved with the power-scaling limit and vanishing transmit power (rho = 0).
inline double ee_lower_bound(Direction dir, const HardwareProfile &profile, const EnergyModel &model)
{
    model.validate();
    return power_scaling_limit(dir, profile, model.frame) / (model.alpha(dir) * model.zeta);
}

// p(N) = p_ref (N / N_ref)^{-t}.
struct PowerScalingLaw
{
    double t_bs = 0.0;
    double t_ue = 0.0;
    double p_bs_ref = 1.0;
    double p_ue_ref = 1.0;
    Index n_ref = 1;

    bool in_validity_region() const { return t_ue > 0.0 && t_ue < 0.5 && t_bs >= 0.0 && t_bs + t_ue < 1.0; }
};

inline PowerConfig scaled_power(const PowerScalingLaw &law, Index n)
{
    require(n >= 1 && law.n_ref >= 1, "antenna counts must be at least 1");
    require(law.t_bs >= 0.0 && law.t_ue >= 0.0, "scaling exponents must be non-negative");
    const double ratio = static_cast<double>(n) / static_cast<double>(law.n_ref);
    return {law.p_bs_ref * std::pow(ratio, -law.t_bs), law.p_ue_ref * std::pow(ratio, -law.t_ue)};
}

struct EeOptimum
{
    double best_p = 0.0;
    Index best_n = 0;
    double best_ee = 0.0;
    std::vector<double> p_grid;
    std::vector<Index> n_grid;
    // surface[i][j] = EE at p_grid[i], n_grid[j]; se likewise.
    std::vector<std::vector<double>> surface;
    std::vector<std::vector<double>> se;

    // Index into p_grid of the EE-maximizing power for each N.
    std::vector<std::size_t> ridge() const
    {
        std::vector<std::size_t> out(n_grid.size(), 0);
        for (std::size_t j = 0; j < n_grid.size(); ++j)
            for (std::size_t i = 1; i < p_grid.size(); ++i)
                if (surface[i][j] > surface[out[j]][j])
                    out[j] = i;
        return out;
    }
};

// Spectral efficiency as a function of (p, N), with p_BS = p_UE = p.
using CapacityFunction = std::function<double(double p, Index n)>;

// Exhaustive grid maximization of the EE. Grid points are evaluated through
// `parallel` when given; the reduction runs in grid order.
inline EeOptimum ee_optimize(Direction dir, const EnergyModel &model, const std::vector<double> &p_grid,
                             const std::vector<Index> &n_grid, const CapacityFunction &capacity_fn,
                             const ParallelFor &parallel = {})
{
    model.validate();
    require(!p_grid.empty() && !n_grid.empty(), "EE grids must be non-empty");
    EeOptimum out;
    out.p_grid = p_grid;
    out.n_grid = n_grid;
    out.se.assign(p_grid.size(), std::vector<double>(n_grid.size(), 0.0));
    out.surface = out.se;
    const std::size_t cells = p_grid.size() * n_grid.size();
    auto body = [&](std::size_t k) {
        std::size_t i = k / n_grid.size();
        std::size_t j = k % n_grid.size();
        double se = capacity_fn(p_grid[i], n_grid[j]);
        out.se[i][j] = se;
        out.surface[i][j] = ee(dir, se, PowerConfig{p_grid[i], p_grid[i]}, model, n_grid[j]);
    };
    if (parallel)
        parallel(cells, body);
    else
        sequential_for(cells, body);
    out.best_ee = -1.0;
    for (std::size_t i = 0; i < p_grid.size(); ++i)
        for (std::size_t j = 0; j < n_grid.size(); ++j)
            if (out.surface[i][j] > out.best_ee)
            {
                out.best_ee = out.surface[i][j];
                out.best_p = p_grid[i];
                out.best_n = n_grid[j];
            }
    return out;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t points)
{
    require(lo > 0.0 && hi >= lo && points >= 1, "log grid needs 0 < lo <= hi and at least one point");
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = points == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(points - 1));
    return g;
}

} // namespace mimo
