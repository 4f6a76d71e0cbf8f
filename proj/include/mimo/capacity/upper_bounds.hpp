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

#include "mimo/capacity/frame.hpp"
#include "mimo/impairments/hardware.hpp"
#include "mimo/numerics/expint.hpp"
#include "mimo/numerics/monte_carlo.hpp"
#include "mimo/numerics/sampling.hpp"

namespace mimo {

enum class AsymptoticRegime
{
    HighPower,
    LargeN
};

namespace detail {

// Coefficients of psi = sum_i |h_i|^2 / (kappa_array |h_i|^2 + noise_ratio)
// and the UE-side kappa for either direction.
struct UpperBoundTerms
{
    double kappa_array = 0.0;
    double kappa_ue = 0.0;
    double noise_ratio = 0.0; // sigma^2 / p, +inf when p = 0
};

inline UpperBoundTerms upper_bound_terms(Direction dir, const PowerConfig &power, const HardwareProfile &profile)
{
    power.validate();
    UpperBoundTerms t;
    if (dir == Direction::Downlink)
    {
        t.kappa_array = profile.kappa_t_bs;
        t.kappa_ue = profile.kappa_r_ue;
        t.noise_ratio = power.p_bs > 0.0 ? profile.sigma2_ue / power.p_bs : kUnboundedCapacity;
    }
    else
    {
        t.kappa_array = profile.kappa_r_bs;
        t.kappa_ue = profile.kappa_t_ue;
        t.noise_ratio = power.p_ue > 0.0 ? profile.sigma2_bs / power.p_ue : kUnboundedCapacity;
    }
    return t;
}

inline double rate_from_gain(double frac, double g, double kappa_ue)
{
    if (std::isinf(g))
        return kappa_ue > 0.0 ? frac * std::log2(1.0 + 1.0 / kappa_ue) : kUnboundedCapacity;
    return frac * std::log2(1.0 + g / (1.0 + kappa_ue * g));
}

} // namespace detail

// Closed-form upper bound: G = sum_i E{|h_i|^2/(kappa |h_i|^2 + sigma^2/p)}
// = sum_i (1/kappa)(1 - x_i e^{x_i} E1(x_i)), x_i = sigma^2/(p kappa r_ii).
inline double upper_bound_gain(Direction dir, const CovarianceMatrix &r, const PowerConfig &power,
                               const HardwareProfile &profile)
{
    auto t = detail::upper_bound_terms(dir, power, profile);
    if (std::isinf(t.noise_ratio))
        return 0.0;
    RVector diag = r.diagonal_entries();
    double g = 0.0;
    for (Index i = 0; i < diag.size(); ++i)
        g += exponential_ratio_mean(t.kappa_array, t.noise_ratio, std::max(diag(i), 0.0));
    return g;
}

inline double upper_bound_closed_form(Direction dir, const CovarianceMatrix &r, const PowerConfig &power,
                                      const HardwareProfile &profile, const TddFrame &frame)
{
    frame.validate();
    auto t = detail::upper_bound_terms(dir, power, profile);
    double g = upper_bound_gain(dir, r, power, profile);
    return detail::rate_from_gain(frame.data_fraction(dir), g, t.kappa_ue);
}

// HighPower: frac log2(1 + N/(kappa_array + kappa_ue N)); LargeN: frac log2(1 + 1/kappa_ue).
inline double upper_bound_asymptotic(Direction dir, AsymptoticRegime regime, const HardwareProfile &profile,
                                     const TddFrame &frame, Index n)
{
    frame.validate();
    require(n >= 1, "N must be at least 1");
    auto t = detail::upper_bound_terms(dir, PowerConfig{}, profile);
    const double frac = frame.data_fraction(dir);
    double denom = regime == AsymptoticRegime::HighPower
                       ? (t.kappa_array + t.kappa_ue * static_cast<double>(n)) / static_cast<double>(n)
                       : t.kappa_ue;
    if (denom <= 0.0)
        return kUnboundedCapacity;
    return frac * std::log2(1.0 + 1.0 / denom);
}

// Monte-Carlo average of the perfect-CSI rate
// frac log2(1 + psi/(1 + kappa_ue psi)), psi = sum_i |h_i|^2/(kappa |h_i|^2 + sigma^2/p).
inline Estimate upper_bound_perfect_csi_mc(Direction dir, const CovarianceMatrix &r, const PowerConfig &power,
                                           const HardwareProfile &profile, const TddFrame &frame,
                                           const MonteCarloConfig &mc)
{
    frame.validate();
    require(mc.trials >= 2, "at least two trials are required");
    auto t = detail::upper_bound_terms(dir, power, profile);
    const double frac = frame.data_fraction(dir);
    BlockMoments moments(mc.blocks(), 1);
    mc.for_each_block([&](std::size_t blk) {
        RngStream rng = mc.rng.substream(blk);
        const Index m = static_cast<Index>(mc.trials_in_block(blk));
        CDense h = sample_cn_block(r, rng, m);
        double sum = 0.0;
        for (Index j = 0; j < m; ++j)
        {
            double psi = 0.0;
            if (!std::isinf(t.noise_ratio))
                for (Index i = 0; i < h.rows(); ++i)
                {
                    double a = std::norm(h(i, j));
                    psi += a / (t.kappa_array * a + t.noise_ratio);
                }
            sum += detail::rate_from_gain(frac, psi, t.kappa_ue);
        }
        moments.block(blk)[0] = sum;
        moments.set_count(blk, static_cast<std::size_t>(m));
    });
    return moments.jackknife([](const std::vector<double> &v) { return v[0]; });
}

} // namespace mimo
