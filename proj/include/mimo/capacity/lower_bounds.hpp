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
#include <optional>

#include "mimo/capacity/frame.hpp"
#include "mimo/estimation/lmmse.hpp"
#include "mimo/numerics/monte_carlo.hpp"
#include "mimo/numerics/sampling.hpp"

namespace mimo {

// Long-term statistics of interference during data transmission.
struct DataInterference
{
    std::optional<CovarianceMatrix> ul_covariance; // E{Q} at the BS
    double dl_variance = 0.0;                      // E{I} at the UE
};

// Per-trial quantities of v = hhat/||hhat|| accumulated block-wise.
struct BeamformingMoments
{
    enum Quantity : std::size_t
    {
        kGainRe,   // Re h^H v
        kGainIm,   // Im h^H v
        kGainSq,   // |h^H v|^2
        kDiag,     // sum_i |h_i|^2 |v_i|^2
        kQuad,     // v^H E{Q} v
        kNorm2,    // ||hhat||^2
        kNorm4,    // ||hhat||^4
        kCount
    };

    BlockMoments blocks;
};

// Simulates pilot transmission z = h (d + eta_t) + eta_r + nu, LMMSE estimation
// and MRC/MRT with v = hhat/||hhat||. All Gaussian draws are made for every
// configuration so that runs with equal streams share random numbers.
inline BeamformingMoments simulate_mr_moments(const LmmseOperator &op, const CovarianceMatrix &r,
                                              const CovarianceMatrix &s, const HardwareProfile &profile,
                                              const DataInterference &interference, const MonteCarloConfig &mc)
{
    const Index n = r.size();
    require_dims(op.A.rows() == n && s.size() == n, "dimension mismatch");
    require_dims(!interference.ul_covariance || interference.ul_covariance->size() == n,
                 "interference covariance dimension mismatch");
    require(mc.trials >= 2, "at least two trials are required");
    const cdouble d = op.pilot.d;
    const double p = op.pilot.power();
    const double sd_t = std::sqrt(profile.kappa_t_ue * p);
    const double sd_r = std::sqrt(profile.kappa_r_bs * p);
    const double sd_n = std::sqrt(profile.sigma2_bs);
    const bool has_s = s.trace() > 0.0;

    BeamformingMoments out{BlockMoments(mc.blocks(), BeamformingMoments::kCount)};
    mc.for_each_block([&](std::size_t blk) {
        RngStream rng = mc.rng.substream(blk);
        const Index m = static_cast<Index>(mc.trials_in_block(blk));
        CDense h = sample_cn_block(r, rng, m);
        CDense z(n, m);
        for (Index j = 0; j < m; ++j)
        {
            cdouble eta_t = sd_t * rng.complex_normal();
            for (Index i = 0; i < n; ++i)
                z(i, j) = h(i, j) * (d + eta_t) + sd_r * std::abs(h(i, j)) * rng.complex_normal() +
                          sd_n * rng.complex_normal();
        }
        if (has_s)
            z += sample_cn_block(s, rng, m);
        CDense v = op.A.apply(z);
        CDense qv;
        double *acc = out.blocks.block(blk);
        for (Index j = 0; j < m; ++j)
        {
            double nrm2 = v.col(j).squaredNorm();
            if (nrm2 > 0.0)
                v.col(j) /= std::sqrt(nrm2);
            acc[BeamformingMoments::kNorm2] += nrm2;
            acc[BeamformingMoments::kNorm4] += nrm2 * nrm2;
        }
        if (interference.ul_covariance)
            qv = interference.ul_covariance->matrix().apply(v);
        for (Index j = 0; j < m; ++j)
        {
            cdouble g = h.col(j).dot(v.col(j));
            acc[BeamformingMoments::kGainRe] += g.real();
            acc[BeamformingMoments::kGainIm] += g.imag();
            acc[BeamformingMoments::kGainSq] += std::norm(g);
            acc[BeamformingMoments::kDiag] += (h.col(j).cwiseAbs2().cwiseProduct(v.col(j).cwiseAbs2())).sum();
            if (interference.ul_covariance)
                acc[BeamformingMoments::kQuad] += v.col(j).dot(qv.col(j)).real();
        }
        out.blocks.set_count(blk, static_cast<std::size_t>(m));
    });
    return out;
}

// SINR of the no-decoder-CSI lower bound evaluated from moment means.
inline double lower_bound_sinr(Direction dir, const std::vector<double> &m, const PowerConfig &power,
                               const HardwareProfile &profile, const DataInterference &interference)
{
    using Q = BeamformingMoments;
    const double num = m[Q::kGainRe] * m[Q::kGainRe] + m[Q::kGainIm] * m[Q::kGainIm];
    double den = 0.0;
    if (dir == Direction::Downlink)
    {
        if (power.p_bs <= 0.0)
            return 0.0;
        den = (1.0 + profile.kappa_r_ue) * m[Q::kGainSq] - num + profile.kappa_t_bs * m[Q::kDiag] +
              (interference.dl_variance + profile.sigma2_ue) / power.p_bs;
    }
    else
    {
        if (power.p_ue <= 0.0)
            return 0.0;
        den = (1.0 + profile.kappa_t_ue) * m[Q::kGainSq] - num + profile.kappa_r_bs * m[Q::kDiag] +
              (m[Q::kQuad] + profile.sigma2_bs) / power.p_ue;
    }
    return den > 0.0 ? num / den : kUnboundedCapacity;
}

inline Estimate lower_bound_from_moments(Direction dir, const BeamformingMoments &bm, const PowerConfig &power,
                                         const HardwareProfile &profile, const DataInterference &interference,
                                         const TddFrame &frame)
{
    const double frac = frame.data_fraction(dir);
    return bm.blocks.jackknife([&](const std::vector<double> &m) {
        return frac * std::log2(1.0 + lower_bound_sinr(dir, m, power, profile, interference));
    });
}

// Lower bound with MRT (DL) or MRC (UL) built from the LMMSE estimate.
inline Estimate lower_bound_mc(Direction dir, const CovarianceMatrix &r, const CovarianceMatrix &s,
                               const DataInterference &interference, const PowerConfig &power,
                               const HardwareProfile &profile, const PilotConfig &pilot, const TddFrame &frame,
                               const MonteCarloConfig &mc)
{
    frame.validate();
    power.validate();
    require(mc.trials >= 1000, "lower_bound_mc requires at least 1000 trials");
    LmmseOperator op = build_lmmse(r, s, pilot, profile);
    auto bm = simulate_mr_moments(op, r, s, profile, interference, mc);
    return lower_bound_from_moments(dir, bm, power, profile, interference, frame);
}

struct PhiMoments
{
    double mean_abs_sq = 1.0;   // |E{phi}|^2
    double second_moment = 1.0; // E{|phi|^2}
    std::size_t trials = 0;
};

// tr(A X A^H).
inline double sandwich_trace(const ComplexMatrix &a, const ComplexMatrix &x)
{
    if (x.is_diagonal() && !a.is_diagonal())
        return (a.dense_storage().cwiseAbs2() * x.diag_storage().real()).sum();
    return trace_of_product(a * x, a.adjoint()).real();
}

// Moments of phi = (1 + eta/d) sqrt(tr(R - C)) / sqrt(tr(A(|d + eta|^2 R + Psi)A^H)),
// eta ~ CN(0, kappa_t^UE p), Psi = p kappa_r^BS D_R + S + sigma2_BS I.
inline PhiMoments phi_moments(const LmmseOperator &op, const CovarianceMatrix &r, const CovarianceMatrix &s,
                              const PilotConfig &pilot, const HardwareProfile &profile, const MonteCarloConfig &mc)
{
    PhiMoments out;
    out.trials = mc.trials;
    if (profile.kappa_t_ue == 0.0)
        return out;
    const double p = pilot.power();
    const double t0 = r.trace() - op.mse;
    ComplexMatrix psi = p * profile.kappa_r_bs * diagonal_part(r.matrix()) + s.matrix() +
                        ComplexMatrix::identity(r.size(), profile.sigma2_bs);
    const double t_r = sandwich_trace(op.A, r.matrix());
    const double t_psi = sandwich_trace(op.A, psi);
    const double sd = std::sqrt(profile.kappa_t_ue * p);

    BlockMoments moments(mc.blocks(), 3);
    mc.for_each_block([&](std::size_t blk) {
        RngStream rng = mc.rng.substream(blk);
        const std::size_t m = mc.trials_in_block(blk);
        double *acc = moments.block(blk);
        for (std::size_t j = 0; j < m; ++j)
        {
            cdouble eta = sd * rng.complex_normal();
            cdouble phi = (1.0 + eta / pilot.d) * std::sqrt(t0) / std::sqrt(std::norm(pilot.d + eta) * t_r + t_psi);
            acc[0] += phi.real();
            acc[1] += phi.imag();
            acc[2] += std::norm(phi);
        }
        moments.set_count(blk, m);
    });
    auto mean = moments.means();
    out.mean_abs_sq = mean[0] * mean[0] + mean[1] * mean[1];
    out.second_moment = mean[2];
    return out;
}

// frac log2(1 + |E phi|^2 / ((1 + kappa) E|phi|^2 - |E phi|^2)),
// kappa = kappa_r^UE (DL) or kappa_t^UE (UL).
inline double lower_bound_asymptotic(Direction dir, const LmmseOperator &, const PhiMoments &phi,
                                     const HardwareProfile &profile, const TddFrame &frame)
{
    frame.validate();
    const double kappa = dir == Direction::Downlink ? profile.kappa_r_ue : profile.kappa_t_ue;
    const double den = (1.0 + kappa) * phi.second_moment - phi.mean_abs_sq;
    if (den <= 0.0)
        return kUnboundedCapacity;
    return frame.data_fraction(dir) * std::log2(1.0 + phi.mean_abs_sq / den);
}

} // namespace mimo
