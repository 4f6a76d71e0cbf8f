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

#include "mimo/channel/covariance_models.hpp"
#include "mimo/estimation/lmmse.hpp"
#include "mimo/estimation/multi_pilot.hpp"
#include "mimo/expcli/context.hpp"

namespace mimo::expcli {

inline CovarianceMatrix exponential_covariance(Index n, double r)
{
    CovarianceSpec spec;
    spec.model = CovarianceModel::ExponentialCorrelation;
    spec.n_antennas = n;
    spec.corr_magnitude = r;
    return make_covariance(spec);
}

// kappa_t^UE = kappa_r^BS = kappa, unit receiver noise.
inline HardwareProfile estimation_profile(double kappa)
{
    HardwareProfile hw;
    hw.kappa_t_ue = kappa;
    hw.kappa_r_bs = kappa;
    return hw;
}

// High-SNR relative LMMSE error for R with constant diagonal delta:
// sum_i lambda_i (kt lambda_i + kr delta) / ((1 + kt) lambda_i + kr delta) / tr(R).
inline double relative_error_floor(const CovarianceMatrix &r, const HardwareProfile &hw)
{
    RVector lambda = r.eigenvalues();
    const double delta = r.trace() / static_cast<double>(r.size());
    double sum = 0.0;
    for (Index i = 0; i < lambda.size(); ++i)
    {
        const double l = lambda(i);
        const double den = (1.0 + hw.kappa_t_ue) * l + hw.kappa_r_bs * delta;
        if (den > 0.0)
            sum += l * (hw.kappa_t_ue * l + hw.kappa_r_bs * delta) / den;
    }
    return sum / r.trace();
}

// ---- Estimation error versus SNR --------------------------------------

inline Params fig3_defaults()
{
    Params p;
    p.add("n_antennas", std::int64_t{50}, "antennas", "BS antennas N")
        .add("corr", 0.7, "-", "exponential correlation coefficient r")
        .add("snr_db", std::vector<double>{-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50}, "dB", "UL SNR grid")
        .add("kappas", std::vector<double>{0.0, 0.0025, 0.01, 0.0225}, "-", "kappa_t^UE = kappa_r^BS values");
    return p;
}

inline ResultTable fig3_run(const Params &p, RunContext &)
{
    const Index n = p.integer("n_antennas");
    CovarianceMatrix r = exponential_covariance(n, p.real("corr"));
    CovarianceMatrix s = CovarianceMatrix::zero(n);
    ResultTable t({{"kappa", "-"},
                   {"snr", "dB"},
                   {"mse_rel_lmmse", "-"},
                   {"mse_rel_conventional", "-"},
                   {"floor_rel", "-"}});
    for (double kappa : p.reals("kappas"))
    {
        HardwareProfile hw = estimation_profile(kappa);
        hw.validate();
        const double floor = relative_error_floor(r, hw);
        for (double snr : p.reals("snr_db"))
        {
            PilotConfig pilot = PilotConfig::with_power(db_to_linear(snr));
            LmmseOperator op = build_lmmse(r, s, pilot, hw);
            ComplexMatrix conv = conventional_estimator(r, s, pilot, hw.sigma2_bs);
            double mse_conv = mse_of_linear_estimator(conv, r, s, pilot, hw);
            t.add_row({kappa, snr, relative_mse(op.mse, r), relative_mse(mse_conv, r), floor});
        }
    }
    t.plot = {"snr", {"mse_rel_lmmse", "mse_rel_conventional"}, {"kappa"}, false, true};
    return t;
}

// ---- Estimation error versus pilot length -----------------------------

inline Params fig4_defaults()
{
    Params p;
    p.add("n_antennas", std::int64_t{50}, "antennas", "BS antennas N")
        .add("corr", 0.7, "-", "exponential correlation coefficient r")
        .add("snr_db", std::vector<double>{5, 30}, "dB", "UL SNR values")
        .add("kappa", 0.0025, "-", "kappa_t^UE = kappa_r^BS")
        .add("pilot_lengths", std::vector<std::int64_t>{1, 2, 4, 8, 16, 32, 64}, "channel uses", "pilot lengths B");
    return p;
}

inline ResultTable fig4_run(const Params &p, RunContext &ctx)
{
    const Index n = p.integer("n_antennas");
    CovarianceMatrix r = exponential_covariance(n, p.real("corr"));
    CovarianceMatrix s = CovarianceMatrix::zero(n);
    HardwareProfile hw = estimation_profile(p.real("kappa"));
    hw.validate();
    const HardwareProfile ideal = HardwareProfile::ideal();
    ResultTable t({{"snr", "dB"},
                   {"pilot_length", "channel uses"},
                   {"mse_rel_ideal", "-"},
                   {"mse_rel_uncorrelated", "-"},
                   {"mse_rel_uncorrelated_mc", "-"},
                   {"mse_rel_uncorrelated_mc_se", "-"},
                   {"mse_rel_correlated_mc", "-"},
                   {"mse_rel_correlated_mc_se", "-"}});
    const double tr = r.trace();
    std::uint64_t stream = 0;
    for (double snr : p.reals("snr_db"))
    {
        const double pw = db_to_linear(snr);
        LmmseOperator op = build_lmmse(r, s, PilotConfig::with_power(pw), hw);
        for (std::int64_t b : p.integers("pilot_lengths"))
        {
            require(b >= 1, "pilot lengths must be at least 1");
            const int bl = static_cast<int>(b);
            auto unc = PilotConfig::with_power(pw, bl, DistortionCorrelation::Uncorrelated);
            auto cor = PilotConfig::with_power(pw, bl, DistortionCorrelation::FullyCorrelated);
            // Ideal hardware: B pilot uses act as one use with B times the energy.
            double ideal_mse = build_lmmse(r, s, PilotConfig::with_power(pw * static_cast<double>(b)), ideal).mse;
            auto tag = "snr " + format_number(snr) + " dB, B " + std::to_string(b);
            Estimate eu = multi_pilot_mse_mc(op, r, s, unc, hw, ctx.mc(stream));
            Estimate ec = multi_pilot_mse_mc(op, r, s, cor, hw, ctx.mc(stream));
            ++stream;
            ctx.track(eu, tag + " uncorrelated");
            ctx.track(ec, tag + " correlated");
            t.add_row({snr, static_cast<double>(b), ideal_mse / tr, multi_pilot_mse(op, unc) / tr, eu.value / tr,
                       eu.std_error / tr, ec.value / tr, ec.std_error / tr});
        }
    }
    t.plot = {"pilot_length", {"mse_rel_ideal", "mse_rel_uncorrelated", "mse_rel_correlated_mc"}, {"snr"}, true, true};
    return t;
}

} // namespace mimo::expcli
