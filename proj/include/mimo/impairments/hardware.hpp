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
#include <limits>

#include "mimo/numerics/covariance.hpp"

namespace mimo {

// Distortion proportionality coefficients and receiver noise variances.
struct HardwareProfile
{
    double kappa_t_bs = 0.0;
    double kappa_r_bs = 0.0;
    double kappa_t_ue = 0.0;
    double kappa_r_ue = 0.0;
    double sigma2_bs = 1.0;
    double sigma2_ue = 1.0;

    static HardwareProfile uniform(double kappa, double sigma2 = 1.0)
    {
        return {kappa, kappa, kappa, kappa, sigma2, sigma2};
    }

    static HardwareProfile ideal(double sigma2 = 1.0) { return uniform(0.0, sigma2); }

    // kappa_bound = infinity lifts the upper limit for scaling-law sweeps.
    void validate(double kappa_bound = 1.0) const
    {
        for (double k : {kappa_t_bs, kappa_r_bs, kappa_t_ue, kappa_r_ue})
            require(std::isfinite(k) && k >= 0.0 && k <= kappa_bound,
                    "kappa must lie in [0, " + std::to_string(kappa_bound) + "]");
        require(std::isfinite(sigma2_bs) && sigma2_bs > 0.0, "sigma2_bs must be positive and finite");
        require(std::isfinite(sigma2_ue) && sigma2_ue > 0.0, "sigma2_ue must be positive and finite");
    }
};

struct DownlinkDistortion
{
    ComplexMatrix upsilon_t_bs; // diagonal
    double upsilon_r_ue = 0.0;
};

struct UplinkDistortion
{
    double upsilon_t_ue = 0.0;
    ComplexMatrix upsilon_r_bs; // diagonal
};

// Transmit distortion kappa_t^BS diag(W), receive distortion kappa_r^UE h^T W h^*.
inline DownlinkDistortion dl_distortion_covariances(const CovarianceMatrix &w, const CVector &h,
                                                    const HardwareProfile &profile)
{
    require_dims(w.size() == h.size(), "precoder covariance and channel dimensions differ");
    DownlinkDistortion out;
    out.upsilon_t_bs = ComplexMatrix::diagonal(RVector(profile.kappa_t_bs * w.diagonal_entries()));
    CVector hc = h.conjugate();
    out.upsilon_r_ue = profile.kappa_r_ue * h.cwiseProduct(w.matrix() * hc).sum().real();
    return out;
}

// Transmit distortion kappa_t^UE p, receive distortion kappa_r^BS p diag(|h_i|^2).
inline UplinkDistortion ul_distortion_covariances(double p_ue, const CVector &h, const HardwareProfile &profile)
{
    require(p_ue >= 0.0, "UE power must be non-negative");
    UplinkDistortion out;
    out.upsilon_t_ue = profile.kappa_t_ue * p_ue;
    out.upsilon_r_bs = ComplexMatrix::diagonal(RVector(profile.kappa_r_bs * p_ue * h.cwiseAbs2()));
    return out;
}

inline double evm(double kappa)
{
    require(kappa >= 0.0, "kappa must be non-negative");
    return std::sqrt(kappa);
}

inline double kappa_from_evm(double evm_value)
{
    require(evm_value >= 0.0, "EVM must be non-negative");
    return evm_value * evm_value;
}

// kappa(N) = base (N / N_ref)^tau.
struct ImpairmentScaling
{
    double tau_t = 0.0;
    double tau_r = 0.0;
    double base_kappa = 0.0;
    Index reference_n = 1;
};

inline double scaled_kappa(double base_kappa, double tau, Index reference_n, Index n,
                           double kappa_bound = 1.0)
{
    require(n >= 1 && reference_n >= 1, "antenna counts must be at least 1");
    require(base_kappa >= 0.0 && tau >= 0.0, "base kappa and exponent must be non-negative");
    double k = base_kappa * std::pow(static_cast<double>(n) / static_cast<double>(reference_n), tau);
    require(k <= kappa_bound, "scaled kappa " + std::to_string(k) + " exceeds the bound " + std::to_string(kappa_bound));
    return k;
}

inline double scaled_kappa_t(const ImpairmentScaling &s, Index n, double kappa_bound = 1.0)
{
    return scaled_kappa(s.base_kappa, s.tau_t, s.reference_n, n, kappa_bound);
}

inline double scaled_kappa_r(const ImpairmentScaling &s, Index n, double kappa_bound = 1.0)
{
    return scaled_kappa(s.base_kappa, s.tau_r, s.reference_n, n, kappa_bound);
}

enum class OscillatorMode
{
    CommonOscillator,
    SeparateOscillators
};

struct PhaseNoiseConfig
{
    double delta_bs = 0.0; // rad^2 per channel use
    double delta_ue = 0.0;
    OscillatorMode mode = OscillatorMode::CommonOscillator;
};

// First-order phase-noise distortion variance t channel uses after estimation.
// m2_full = E{|v^H h|^2}, m2_diag = sum_i E{|h_i|^2 |v_i|^2}.
inline double phase_noise_variance(double t, const PhaseNoiseConfig &cfg, double p_ue, double m2_full,
                                   double m2_diag)
{
    require(t >= 0.0 && p_ue >= 0.0 && m2_full >= 0.0 && m2_diag >= 0.0,
            "phase-noise inputs must be non-negative");
    require(cfg.delta_bs >= 0.0 && cfg.delta_ue >= 0.0, "phase-noise increments must be non-negative");
    double bs_moment = cfg.mode == OscillatorMode::CommonOscillator ? m2_full : m2_diag;
    return p_ue * t * cfg.delta_ue * m2_full + p_ue * t * cfg.delta_bs * bs_moment;
}

} // namespace mimo
