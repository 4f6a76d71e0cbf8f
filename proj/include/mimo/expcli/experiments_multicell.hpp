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
#include <string>
#include <vector>

#include "mimo/channel/covariance_models.hpp"
#include "mimo/expcli/context.hpp"
#include "mimo/multicell/scenario.hpp"
#include "mimo/multicell/uplink.hpp"

namespace mimo::expcli {

inline Combiner combiner_from(const Params &p) { return p.text("combiner") == "MMSE" ? Combiner::MMSE : Combiner::MRC; }

// kappa_t^UE = kappa_r^BS = kappa, unit noise.
inline HardwareProfile uplink_profile(double kappa)
{
    HardwareProfile hw;
    hw.kappa_t_ue = kappa;
    hw.kappa_r_bs = kappa;
    return hw;
}

// User under study with unit gain, optionally a pilot-sharing contaminator of
// relative gain `contaminator` and a regular interferer of relative gain `regular`.
inline UplinkSystem contamination_system(Index n, double kappa, double power, double contaminator, double regular)
{
    UplinkSystem sys;
    sys.n_antennas = n;
    sys.profile = uplink_profile(kappa);
    sys.users.push_back({1.0, power, 0, true});
    if (contaminator > 0.0)
        sys.users.push_back({contaminator, power, 0, false});
    if (regular > 0.0)
        sys.users.push_back({regular, power, 1, false});
    return sys;
}

// ---- Rate versus contaminator strength ---------------------------------

inline Params fig8_defaults()
{
    std::vector<double> gains;
    for (int k = 0; k <= 16; ++k)
        gains.push_back(-40.0 + 2.5 * k);
    Params p;
    p.add("n_antennas", std::int64_t{200}, "antennas", "BS antennas N")
        .add("snr", 20.0, "dB", "UL SNR of the user under study")
        .add("kappas", std::vector<double>{0.0, 0.0025, 0.01}, "-", "kappa_t^UE = kappa_r^BS values")
        .add("gains_db", gains, "dB", "relative channel gain of the pilot contaminator")
        .add("regular_db", -10.0, "dB", "relative channel gain of the regular interferer")
        .add("combiner", std::string("MRC"), "-", "receive combiner", {"MRC", "MMSE"});
    add_frame_params(p);
    return p;
}

inline ResultTable fig8_run(const Params &p, RunContext &ctx)
{
    const Index n = p.integer("n_antennas");
    const double pw = db_to_linear(p.real("snr"));
    const double regular = db_to_linear(p.real("regular_db"));
    const Combiner comb = combiner_from(p);
    const TddFrame frame = frame_from(p);
    const auto &gains = p.reals("gains_db");
    ResultTable t({{"kappa", "-"},
                   {"gain", "dB"},
                   {"rate_no_interference", "bit/channel use"},
                   {"rate_contaminated", "bit/channel use"},
                   {"rate_contaminated_se", "bit/channel use"},
                   {"rate_both", "bit/channel use"},
                   {"rate_both_se", "bit/channel use"}});
    for (double kappa : p.reals("kappas"))
    {
        const auto tag = "kappa " + format_number(kappa);
        Estimate free = uplink_rates(contamination_system(n, kappa, pw, 0.0, 0.0), comb, frame, ctx.mc(0)).average;
        ctx.track(free, tag + " without interference");
        for (std::size_t k = 0; k < gains.size(); ++k)
        {
            const double g = db_to_linear(gains[k]);
            Estimate pc =
                uplink_rates(contamination_system(n, kappa, pw, g, 0.0), comb, frame, ctx.mc(k + 1)).average;
            Estimate both =
                uplink_rates(contamination_system(n, kappa, pw, g, regular), comb, frame, ctx.mc(k + 1)).average;
            ctx.track(pc, tag + ", gain " + format_number(gains[k]) + " dB contaminated");
            ctx.track(both, tag + ", gain " + format_number(gains[k]) + " dB both");
            t.add_row({kappa, gains[k], free.value, pc.value, pc.std_error, both.value, both.std_error});
        }
    }
    t.plot = {"gain", {"rate_no_interference", "rate_contaminated", "rate_both"}, {"kappa"}, false, false};
    return t;
}

// ---- Contamination sweep with the negligibility condition ---------------

inline Params contamination_sweep_defaults()
{
    std::vector<double> gains;
    for (int k = 0; k <= 40; ++k)
        gains.push_back(-40.0 + k);
    Params p;
    p.add("n_antennas", std::int64_t{200}, "antennas", "BS antennas N")
        .add("snr", 20.0, "dB", "UL SNR of the user under study")
        .add("kappas", std::vector<double>{0.0025, 0.01}, "-", "kappa_t^UE = kappa_r^BS values")
        .add("gains_db", gains, "dB", "relative channel gain of the pilot contaminator")
        .add("margin_db", 10.0, "dB", "margin by which kappa_t^UE must exceed the contamination term")
        .add("combiner", std::string("MRC"), "-", "receive combiner", {"MRC", "MMSE"});
    add_frame_params(p);
    return p;
}

inline ResultTable contamination_sweep_run(const Params &p, RunContext &ctx)
{
    const Index n = p.integer("n_antennas");
    const double pw = db_to_linear(p.real("snr"));
    const double margin = p.real("margin_db");
    const Combiner comb = combiner_from(p);
    const TddFrame frame = frame_from(p);
    const auto &gains = p.reals("gains_db");
    ResultTable t({{"kappa", "-"},
                   {"gain", "dB"},
                   {"rate", "bit/channel use"},
                   {"rate_se", "bit/channel use"},
                   {"rate_free", "bit/channel use"},
                   {"contamination_term", "dB"},
                   {"kappa_t_ue", "dB"},
                   {"negligible", "-"}});
    for (double kappa : p.reals("kappas"))
    {
        const auto tag = "kappa " + format_number(kappa);
        Estimate free = uplink_rates(contamination_system(n, kappa, pw, 0.0, 0.0), comb, frame, ctx.mc(0)).average;
        ctx.track(free, tag + " without contamination");
        for (std::size_t k = 0; k < gains.size(); ++k)
        {
            const double g = db_to_linear(gains[k]);
            UplinkSystem sys = contamination_system(n, kappa, pw, g, 0.0);
            Estimate e = uplink_rates(sys, comb, frame, ctx.mc(k + 1)).average;
            ctx.track(e, tag + ", gain " + format_number(gains[k]) + " dB");
            ContaminationCheck chk =
                contamination_negligibility(kappa, sys.estimator(0), CovarianceMatrix::identity(n, 1.0),
                                            {CovarianceMatrix::identity(n, g)}, margin);
            t.add_row({kappa, gains[k], e.value, e.std_error, free.value, linear_to_db(chk.rhs),
                       kappa > 0.0 ? linear_to_db(kappa) : -kUnboundedCapacity, chk.negligible ? 1.0 : 0.0});
        }
    }
    t.plot = {"gain", {"rate", "rate_free"}, {"kappa"}, false, false};
    return t;
}

// Gain at which the rate curve of one kappa first falls to the midpoint
// between its contamination-free value and its value at the strongest
// contaminator, by linear interpolation. NaN when it never does.
inline double breaking_point_db(const ResultTable &t, double kappa)
{
    auto rows = t.select({{"kappa", kappa}});
    if (rows.size() < 2)
        return std::nan("");
    const double free = t.at(rows.front(), "rate_free");
    const double full = t.at(rows.back(), "rate");
    const double mid = 0.5 * (free + full);
    for (std::size_t k = 0; k + 1 < rows.size(); ++k)
    {
        double x0 = t.at(rows[k], "gain"), x1 = t.at(rows[k + 1], "gain");
        double y0 = t.at(rows[k], "rate"), y1 = t.at(rows[k + 1], "rate");
        if (y0 >= mid && y1 <= mid)
            return y0 == y1 ? x0 : x0 + (mid - y0) * (x1 - x0) / (y1 - y0);
    }
    return std::nan("");
}

// ---- Multi-cell rates with unique or reused pilots ----------------------

inline Params fig9_defaults()
{
    const CellScenarioConfig d;
    Params p;
    p.add("n_grid", std::vector<std::int64_t>{10, 25, 50, 100, 200, 400}, "antennas", "BS antenna counts")
        .add("kappas", std::vector<double>{0.0, 0.01}, "-", "kappa_t^UE = kappa_r^BS values")
        .add("combiner", std::string("MMSE"), "-", "receive combiner", {"MRC", "MMSE"})
        .add("grid_size", std::int64_t{d.grid_size}, "cells", "cells per side of the wrap-around grid")
        .add("cell_edge", d.cell_edge, "m", "cell side length")
        .add("ues_per_cell", std::int64_t{d.ues_per_cell}, "UEs", "UEs per cell")
        .add("ring_radius", d.ring_radius, "m", "distance of the UEs from their BS")
        .add("pathloss_db", linear_to_db(d.pathloss_coeff), "dB", "path loss at 1 m")
        .add("pathloss_exponent", d.pathloss_exponent, "-", "path-loss exponent")
        .add("p_ue", d.p_ue, "uJ/channel use", "UE transmit power")
        .add("noise", d.noise_variance, "uJ/channel use", "BS receiver noise variance");
    add_frame_params(p);
    return p;
}

inline CellScenarioConfig scenario_config(const Params &p, Index n, double kappa, PilotPolicy policy)
{
    CellScenarioConfig cfg;
    cfg.grid_size = static_cast<int>(p.integer("grid_size"));
    cfg.cell_edge = p.real("cell_edge");
    cfg.ues_per_cell = static_cast<int>(p.integer("ues_per_cell"));
    cfg.ring_radius = p.real("ring_radius");
    cfg.pathloss_coeff = db_to_linear(p.real("pathloss_db"));
    cfg.pathloss_exponent = p.real("pathloss_exponent");
    cfg.p_ue = p.real("p_ue");
    cfg.noise_variance = p.real("noise");
    cfg.profile = uplink_profile(kappa);
    cfg.policy = policy;
    cfg.n_antennas = n;
    cfg.validate();
    return cfg;
}

// Rates averaged over the UEs of cell 0; all cells are statistically equal.
inline ResultTable fig9_run(const Params &p, RunContext &ctx)
{
    const Combiner comb = combiner_from(p);
    const TddFrame frame = frame_from(p);
    const auto &grid = p.integers("n_grid");
    ResultTable t({{"kappa", "-"},
                   {"n", "antennas"},
                   {"rate_unique", "bit/channel use"},
                   {"rate_unique_se", "bit/channel use"},
                   {"rate_reused", "bit/channel use"},
                   {"rate_reused_se", "bit/channel use"},
                   {"relative_gap", "-"}});
    for (double kappa : p.reals("kappas"))
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const Index n = grid[k];
            double rate[2], se[2];
            int i = 0;
            for (PilotPolicy policy : {PilotPolicy::UniquePerUE, PilotPolicy::ReusedAcrossCells})
            {
                CellScenario sc = build_scenario(scenario_config(p, n, kappa, policy));
                PilotAllocation alloc = allocate_pilots(sc);
                Estimate e = uplink_rates(uplink_system(sc, alloc, 0), comb, frame, ctx.mc(k)).average;
                ctx.track(e, "kappa " + format_number(kappa) + ", N " + std::to_string(n) +
                                 (policy == PilotPolicy::UniquePerUE ? " unique" : " reused"));
                rate[i] = e.value;
                se[i++] = e.std_error;
            }
            t.add_row({kappa, static_cast<double>(n), rate[0], se[0], rate[1], se[1], (rate[0] - rate[1]) / rate[0]});
        }
    t.plot = {"n", {"rate_unique", "rate_reused"}, {"kappa"}, true, false};
    return t;
}

// Average SNR of UE 0 at its serving BS, dB.
inline double serving_snr_db(const Params &p)
{
    CellScenario sc = build_scenario(scenario_config(p, 1, 0.0, PilotPolicy::ReusedAcrossCells));
    return linear_to_db(sc.snr(0, static_cast<std::size_t>(sc.serving[0])));
}

} // namespace mimo::expcli
