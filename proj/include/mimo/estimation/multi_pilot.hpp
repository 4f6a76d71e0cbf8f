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

#include "mimo/estimation/lmmse.hpp"
#include "mimo/numerics/monte_carlo.hpp"
#include "mimo/numerics/sampling.hpp"

namespace mimo {

// MSE of averaging B single-use estimates with temporally uncorrelated distortion.
inline double multi_pilot_mse(const LmmseOperator &op, const PilotConfig &pilot)
{
    pilot.validate();
    require(pilot.correlation == DistortionCorrelation::Uncorrelated,
            "fully correlated multi-pilot MSE has no closed form; use multi_pilot_mse_mc");
    return op.mse / static_cast<double>(pilot.length);
}

// Monte-Carlo MSE of the averaged estimate A (1/B) sum_b z_b. Receiver noise and
// interference are fresh in every pilot use; distortion is fresh (Uncorrelated)
// or repeated (FullyCorrelated). Averages of Gaussian terms are drawn directly.
inline Estimate multi_pilot_mse_mc(const LmmseOperator &op, const CovarianceMatrix &r, const CovarianceMatrix &s,
                                   const PilotConfig &pilot, const HardwareProfile &profile,
                                   const MonteCarloConfig &mc)
{
    pilot.validate();
    require_dims(op.A.rows() == r.size() && r.size() == s.size(), "dimension mismatch");
    require(mc.trials >= 2, "at least two trials are required");
    const Index n = r.size();
    const double p = pilot.power();
    const double b = static_cast<double>(pilot.length);
    const double dist_scale = pilot.correlation == DistortionCorrelation::FullyCorrelated ? 1.0 : 1.0 / b;
    const double sd_t = std::sqrt(profile.kappa_t_ue * p * dist_scale);
    const double sd_r = std::sqrt(profile.kappa_r_bs * p * dist_scale);
    const double sd_n = std::sqrt(profile.sigma2_bs / b);
    const bool has_s = s.trace() > 0.0;

    BlockMoments moments(mc.blocks(), 1);
    mc.for_each_block([&](std::size_t blk) {
        RngStream rng = mc.rng.substream(blk);
        const Index m = static_cast<Index>(mc.trials_in_block(blk));
        CDense h = sample_cn_block(r, rng, m);
        CDense z(n, m);
        for (Index j = 0; j < m; ++j)
        {
            cdouble eta_t = sd_t * rng.complex_normal();
            for (Index i = 0; i < n; ++i)
                z(i, j) = h(i, j) * (pilot.d + eta_t) + sd_r * std::abs(h(i, j)) * rng.complex_normal() +
                          sd_n * rng.complex_normal();
        }
        if (has_s)
            z += sample_cn_block(s, rng, m) / std::sqrt(b);
        CDense err = h - op.A.apply(z);
        moments.block(blk)[0] = err.squaredNorm();
        moments.set_count(blk, static_cast<std::size_t>(m));
    });
    return moments.jackknife([](const std::vector<double> &v) { return v[0]; });
}

} // namespace mimo
