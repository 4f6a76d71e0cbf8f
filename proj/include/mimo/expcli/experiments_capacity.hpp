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

#include "mimo/capacity/lower_bounds.hpp"
#include "mimo/capacity/upper_bounds.hpp"
#include "mimo/channel/covariance_models.hpp"
#include "mimo/expcli/context.hpp"

namespace mimo::expcli {

// One curve of a bounds-versus-N sweep: `label` is written to the key column.
struct ProfileCurve
{
    double label = 0.0;
    HardwareProfile hw;
};

// Lower (MRT/MRC), perfect-CSI Monte-Carlo and closed-form upper bounds for
// R = I and unit noise. Curves at one N share random numbers.
inline ResultTable bounds_sweep(const Params &p, RunContext &ctx, const std::string &key, const std::string &key_unit,
                                const std::vector<ProfileCurve> &curves)
{
    const Direction dir = direction_from(p);
    const TddFrame frame = frame_from(p);
    const double pw = db_to_linear(p.real("snr"));
    const PowerConfig power{pw, pw};
    ResultTable t({{key, key_unit},
                   {"n", "antennas"},
                   {"lower", "bit/channel use"},
                   {"lower_se", "bit/channel use"},
                   {"upper_perfect_csi", "bit/channel use"},
                   {"upper_perfect_csi_se", "bit/channel use"},
                   {"upper_closed_form", "bit/channel use"}});
    const auto &grid = p.integers("n_grid");
    for (const auto &c : curves)
    {
        c.hw.validate();
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const Index n = grid[k];
            require(n >= 1, "antenna counts must be at least 1");
            CovarianceMatrix r = CovarianceMatrix::identity(n);
            CovarianceMatrix s = CovarianceMatrix::zero(n);
            const auto tag = key + " " + format_number(c.label) + ", N " + std::to_string(n);
            Estimate lo = lower_bound_mc(dir, r, s, {}, power, c.hw, PilotConfig::with_power(pw), frame, ctx.mc(k));
            Estimate up = upper_bound_perfect_csi_mc(dir, r, power, c.hw, frame, ctx.mc(k));
            ctx.track(lo, tag + " lower");
            ctx.track(up, tag + " perfect CSI");
            double closed = upper_bound_closed_form(dir, r, power, c.hw, frame);
            t.add_row({c.label, static_cast<double>(n), lo.value, lo.std_error, up.value, up.std_error, closed});
        }
    }
    t.plot = {"n", {"lower", "upper_closed_form"}, {key}, true, false};
    return t;
}

inline std::vector<std::int64_t> doubling_grid(std::int64_t hi)
{
    std::vector<std::int64_t> g;
    for (std::int64_t n = 1; n <= hi; n *= 2)
        g.push_back(n);
    return g;
}

// ---- Bounds versus N for several impairment levels ---------------------

inline Params fig5_defaults(double snr_db)
{
    Params p;
    p.add("snr", snr_db, "dB", "average SNR p tr(R)/(N sigma^2) in both directions")
        .add("n_grid", doubling_grid(512), "antennas", "BS antenna counts")
        .add("kappas", std::vector<double>{0.0, 0.0025, 0.0225}, "-", "common kappa at BS and UE")
        .add("direction", std::string("DL"), "-", "link direction", {"DL", "UL"});
    add_frame_params(p);
    return p;
}

inline ResultTable fig5_run(const Params &p, RunContext &ctx)
{
    std::vector<ProfileCurve> curves;
    for (double k : p.reals("kappas"))
        curves.push_back({k, HardwareProfile::uniform(k)});
    return bounds_sweep(p, ctx, "kappa", "-", curves);
}

// ---- Bounds versus N for several BS impairment levels ------------------

inline Params fig6_defaults()
{
    Params p;
    p.add("snr", 20.0, "dB", "average SNR in both directions")
        .add("n_grid", doubling_grid(512), "antennas", "BS antenna counts")
        .add("kappa_ue", 0.0025, "-", "kappa_t^UE = kappa_r^UE")
        .add("kappa_bs", std::vector<double>{0.0, 0.0025, 0.01, 0.0225}, "-", "kappa_t^BS = kappa_r^BS values")
        .add("direction", std::string("DL"), "-", "link direction", {"DL", "UL"});
    add_frame_params(p);
    return p;
}

inline ResultTable fig6_run(const Params &p, RunContext &ctx)
{
    std::vector<ProfileCurve> curves;
    const double ku = p.real("kappa_ue");
    for (double kb : p.reals("kappa_bs"))
        curves.push_back({kb, HardwareProfile{kb, kb, ku, ku, 1.0, 1.0}});
    return bounds_sweep(p, ctx, "kappa_bs", "-", curves);
}

// ---- Lower bound with BS impairments growing as N^tau -------------------

inline Params fig10_defaults()
{
    Params p;
    p.add("snr", 20.0, "dB", "average SNR in both directions")
        .add("n_grid", doubling_grid(2048), "antennas", "BS antenna counts")
        .add("taus", std::vector<double>{0.0, 0.25, 0.5, 1.0, 2.0}, "-", "exponents tau in kappa_BS = base N^tau")
        .add("kappa_ue", 0.0025, "-", "kappa_t^UE = kappa_r^UE")
        .add("kappa_bs_base", 0.0025, "-", "BS kappa at N = 1")
        .add("direction", std::string("DL"), "-", "link direction", {"DL", "UL"});
    add_frame_params(p);
    return p;
}

inline ResultTable fig10_run(const Params &p, RunContext &ctx)
{
    const Direction dir = direction_from(p);
    const TddFrame frame = frame_from(p);
    const double pw = db_to_linear(p.real("snr"));
    const PowerConfig power{pw, pw};
    const double ku = p.real("kappa_ue");
    const double base = p.real("kappa_bs_base");
    ResultTable t({{"tau", "-"},
                   {"n", "antennas"},
                   {"kappa_bs", "-"},
                   {"lower", "bit/channel use"},
                   {"lower_se", "bit/channel use"}});
    const auto &grid = p.integers("n_grid");
    for (double tau : p.reals("taus"))
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const Index n = grid[k];
            require(n >= 1, "antenna counts must be at least 1");
            // No upper limit on the BS kappa.
            const double kb = scaled_kappa(base, tau, 1, n, kUnboundedCapacity);
            HardwareProfile hw{kb, kb, ku, ku, 1.0, 1.0};
            hw.validate(kUnboundedCapacity);
            CovarianceMatrix r = CovarianceMatrix::identity(n);
            Estimate lo = lower_bound_mc(dir, r, CovarianceMatrix::zero(n), {}, power, hw, PilotConfig::with_power(pw),
                                         frame, ctx.mc(k));
            ctx.track(lo, "tau " + format_number(tau) + ", N " + std::to_string(n));
            t.add_row({tau, static_cast<double>(n), kb, lo.value, lo.std_error});
        }
    t.plot = {"n", {"lower"}, {"tau"}, true, false};
    return t;
}

} // namespace mimo::expcli
