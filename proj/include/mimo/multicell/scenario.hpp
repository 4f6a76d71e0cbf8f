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

#include <numbers>
#include <vector>

#include "mimo/impairments/hardware.hpp"
#include "mimo/multicell/geometry.hpp"
#include "mimo/numerics/covariance.hpp"

namespace mimo {

enum class PilotPolicy
{
    ReusedAcrossCells,
    UniquePerUE
};

// Square cells on a torus, BSs at the cell centers and UEs equally spaced on a
// ring around each BS (first UE due east).
struct CellScenarioConfig
{
    int grid_size = 4;
    double cell_edge = 400.0;   // m
    int ues_per_cell = 6;
    double ring_radius = 100.0; // m
    double pathloss_coeff = std::pow(10.0, -1.53);
    double pathloss_exponent = 3.76;
    double p_ue = 0.0222;
    double noise_variance = 0.0222 * std::pow(10.0, -12.2464);
    HardwareProfile profile{}; // kappas only; noise_variance replaces sigma2_bs
    PilotPolicy policy = PilotPolicy::ReusedAcrossCells;
    Index n_antennas = 100;

    void validate() const
    {
        require(grid_size >= 1 && ues_per_cell >= 1, "grid and cell sizes must be positive");
        require(cell_edge > 0.0, "cell edge must be positive");
        require(ring_radius > 0.0 && ring_radius < 0.5 * cell_edge, "ring radius must lie inside the cell");
        require(pathloss_coeff > 0.0 && pathloss_exponent > 0.0, "path-loss parameters must be positive");
        require(p_ue > 0.0 && noise_variance > 0.0, "power and noise variance must be positive");
        require(n_antennas >= 1, "N must be at least 1");
        profile.validate();
    }

    HardwareProfile hardware() const
    {
        HardwareProfile hw = profile;
        hw.sigma2_bs = noise_variance;
        return hw;
    }
};

struct CellScenario
{
    CellScenarioConfig cfg;
    double world = 0.0;
    std::vector<Point2> bs;
    std::vector<Point2> ue;
    std::vector<int> serving;
    std::vector<std::vector<double>> gain; // gain[u][c], UE u to BS c

    std::size_t n_ues() const { return ue.size(); }
    std::size_t n_cells() const { return bs.size(); }

    double pathloss(double distance) const
    {
        return cfg.pathloss_coeff / std::pow(distance, cfg.pathloss_exponent);
    }

    // Average SNR p gain / sigma^2 of UE u at BS c.
    double snr(std::size_t u, std::size_t c) const { return cfg.p_ue * gain[u][c] / cfg.noise_variance; }

    CovarianceMatrix link_covariance(std::size_t u, std::size_t c) const
    {
        return CovarianceMatrix::identity(cfg.n_antennas, gain[u][c]);
    }
};

inline CellScenario build_scenario(const CellScenarioConfig &cfg)
{
    cfg.validate();
    CellScenario sc;
    sc.cfg = cfg;
    sc.world = cfg.grid_size * cfg.cell_edge;
    for (int row = 0; row < cfg.grid_size; ++row)
        for (int col = 0; col < cfg.grid_size; ++col)
            sc.bs.push_back({(col + 0.5) * cfg.cell_edge, (row + 0.5) * cfg.cell_edge});
    for (std::size_t c = 0; c < sc.bs.size(); ++c)
        for (int k = 0; k < cfg.ues_per_cell; ++k)
        {
            double angle = 2.0 * std::numbers::pi * k / cfg.ues_per_cell;
            sc.ue.push_back({sc.bs[c].x + cfg.ring_radius * std::cos(angle),
                             sc.bs[c].y + cfg.ring_radius * std::sin(angle)});
            sc.serving.push_back(static_cast<int>(c));
        }
    sc.gain.assign(sc.ue.size(), std::vector<double>(sc.bs.size(), 0.0));
    for (std::size_t u = 0; u < sc.ue.size(); ++u)
        for (std::size_t c = 0; c < sc.bs.size(); ++c)
            sc.gain[u][c] = sc.pathloss(wrap_distance(sc.ue[u], sc.bs[c], sc.world));
    return sc;
}

struct PilotAllocation
{
    std::vector<int> pilot;

    // Co-users sharing the pilot of u.
    std::vector<std::size_t> parallel(std::size_t u) const
    {
        std::vector<std::size_t> out;
        for (std::size_t l = 0; l < pilot.size(); ++l)
            if (l != u && pilot[l] == pilot[u])
                out.push_back(l);
        return out;
    }

    std::vector<std::size_t> orthogonal(std::size_t u) const
    {
        std::vector<std::size_t> out;
        for (std::size_t l = 0; l < pilot.size(); ++l)
            if (pilot[l] != pilot[u])
                out.push_back(l);
        return out;
    }
};

// Same intra-cell pattern in every cell, or one pilot per UE.
inline PilotAllocation allocate_pilots(const CellScenario &sc)
{
    PilotAllocation a;
    a.pilot.resize(sc.n_ues());
    for (std::size_t u = 0; u < sc.n_ues(); ++u)
        a.pilot[u] = sc.cfg.policy == PilotPolicy::UniquePerUE ? static_cast<int>(u)
                                                               : static_cast<int>(u % sc.cfg.ues_per_cell);
    return a;
}

// p sum_{l parallel to u} R_l at the serving BS of u.
inline CovarianceMatrix pilot_interference_cov(std::size_t u, const PilotAllocation &alloc, const CellScenario &sc)
{
    const std::size_t c = static_cast<std::size_t>(sc.serving[u]);
    double total = 0.0;
    for (std::size_t l : alloc.parallel(u))
        total += sc.gain[l][c];
    return CovarianceMatrix::identity(sc.cfg.n_antennas, sc.cfg.p_ue * total);
}

// p sum_{l != u} h_l h_l^H from the columns of `h` (N x UEs).
inline ComplexMatrix data_interference_cov(std::size_t u, const CellScenario &sc, const CDense &h)
{
    require_dims(h.rows() == sc.cfg.n_antennas && static_cast<std::size_t>(h.cols()) == sc.n_ues(),
                 "channel realizations must be N x UEs");
    CDense others(h.rows(), h.cols() - 1);
    for (Index l = 0, k = 0; l < h.cols(); ++l)
        if (static_cast<std::size_t>(l) != u)
            others.col(k++) = h.col(l);
    CDense q = sc.cfg.p_ue * others * others.adjoint();
    ComplexMatrix out = ComplexMatrix::dense(std::move(q));
    out.mark_hermitian();
    return out;
}

} // namespace mimo
