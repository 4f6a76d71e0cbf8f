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

#include <vector>

#include <Eigen/Cholesky>

#include "mimo/capacity/lower_bounds.hpp"
#include "mimo/multicell/scenario.hpp"

namespace mimo {

enum class Combiner
{
    MRC,
    MMSE
};

inline const char *to_string(Combiner c) { return c == Combiner::MRC ? "MRC" : "MMSE"; }

// A UE as seen by the BS under study, with R = gain I.
struct UplinkUser
{
    double gain = 1.0;
    double power = 1.0;
    int pilot = 0;
    bool served = false; // served by the BS under study
};

struct UplinkSystem
{
    Index n_antennas = 1;
    std::vector<UplinkUser> users;
    HardwareProfile profile{}; // kappa_t_ue, kappa_r_bs, sigma2_bs

    std::vector<std::size_t> served() const
    {
        std::vector<std::size_t> out;
        for (std::size_t l = 0; l < users.size(); ++l)
            if (users[l].served)
                out.push_back(l);
        return out;
    }

    // S = sum of p_l R_l over the other users on the pilot of u.
    double pilot_interference(std::size_t u) const
    {
        double s = 0.0;
        for (std::size_t l = 0; l < users.size(); ++l)
            if (l != u && users[l].pilot == users[u].pilot)
                s += users[l].power * users[l].gain;
        return s;
    }

    LmmseOperator estimator(std::size_t u) const
    {
        return build_lmmse(CovarianceMatrix::identity(n_antennas, users[u].gain),
                           CovarianceMatrix::identity(n_antennas, pilot_interference(u)),
                           PilotConfig::with_power(users[u].power), profile);
    }

    void validate() const
    {
        require(n_antennas >= 1, "N must be at least 1");
        require(!served().empty(), "the BS under study serves no UE");
        for (const auto &u : users)
            require(u.gain > 0.0 && u.power > 0.0, "user gains and powers must be positive");
        profile.validate();
    }
};

struct UplinkRates
{
    std::vector<std::size_t> users; // indices of the served users
    std::vector<Estimate> per_user;
    Estimate average;
};

// Lower-bound rates of all served users. Pilots: every user transmits
// sqrt(p)(1 + eta_t) on its pilot, the BS adds receive distortion proportional
// to the per-antenna power of each pilot observation plus noise. Data: the
// interference term of each target holds the co-users' signals and transmit
// distortions and the BS receive distortion caused by all users.
inline UplinkRates uplink_rates(const UplinkSystem &sys, Combiner combiner, const TddFrame &frame,
                                const MonteCarloConfig &mc)
{
    sys.validate();
    frame.validate();
    require(mc.trials >= 1000, "uplink_rates requires at least 1000 trials");
    using Q = BeamformingMoments;
    const Index n = sys.n_antennas;
    const auto &hw = sys.profile;
    const auto targets = sys.served();
    const Index nu = static_cast<Index>(sys.users.size());
    const Index nk = static_cast<Index>(targets.size());

    std::vector<int> groups;
    for (auto k : targets)
        if (std::find(groups.begin(), groups.end(), sys.users[k].pilot) == groups.end())
            groups.push_back(sys.users[k].pilot);
    std::vector<LmmseOperator> ops;
    std::vector<double> a, c;
    for (auto k : targets)
    {
        ops.push_back(sys.estimator(k));
        a.push_back(ops.back().A(0, 0).real());
        c.push_back(ops.back().C(0, 0).real());
    }

    // Regularization of the MMSE combiner: expected power of everything the
    // served estimates do not capture.
    double psi = hw.sigma2_bs;
    for (Index l = 0; l < nu; ++l)
    {
        const auto &us = sys.users[l];
        psi += hw.kappa_r_bs * us.power * us.gain;
        if (!us.served)
            psi += (1.0 + hw.kappa_t_ue) * us.power * us.gain;
    }
    for (Index k = 0; k < nk; ++k)
        psi += (1.0 + hw.kappa_t_ue) * sys.users[targets[k]].power * c[k];

    BlockMoments moments(mc.blocks(), static_cast<std::size_t>(nk) * Q::kCount);
    mc.for_each_block([&](std::size_t blk) {
        RngStream rng = mc.rng.substream(blk);
        const std::size_t m = mc.trials_in_block(blk);
        double *acc = moments.block(blk);
        CDense h(n, nu), w(n, nu);
        CDense hhat(n, nk), v(n, nk);
        RVector load(n);
        CVector z(n);
        for (std::size_t t = 0; t < m; ++t)
        {
            rng.fill_complex_normal(w);
            for (Index l = 0; l < nu; ++l)
                h.col(l) = std::sqrt(sys.users[l].gain) * w.col(l);
            load.setZero();
            for (Index l = 0; l < nu; ++l)
                load += sys.users[l].power * h.col(l).cwiseAbs2();

            // Pilot phase.
            CVector eta_t(nu);
            for (Index l = 0; l < nu; ++l)
                eta_t(l) = std::sqrt(hw.kappa_t_ue * sys.users[l].power) * rng.complex_normal();
            for (int g : groups)
            {
                z.setZero();
                RVector group_load = RVector::Zero(n);
                for (Index l = 0; l < nu; ++l)
                    if (sys.users[l].pilot == g)
                    {
                        z += (std::sqrt(sys.users[l].power) + eta_t(l)) * h.col(l);
                        group_load += sys.users[l].power * h.col(l).cwiseAbs2();
                    }
                for (Index i = 0; i < n; ++i)
                    z(i) += std::sqrt(hw.kappa_r_bs * group_load(i)) * rng.complex_normal() +
                            std::sqrt(hw.sigma2_bs) * rng.complex_normal();
                for (Index k = 0; k < nk; ++k)
                    if (sys.users[targets[k]].pilot == g)
                        hhat.col(k) = a[k] * z;
            }

            // Combiners.
            if (combiner == Combiner::MRC)
                v = hhat;
            else
            {
                CDense u(n, nk);
                for (Index k = 0; k < nk; ++k)
                    u.col(k) = std::sqrt((1.0 + hw.kappa_t_ue) * sys.users[targets[k]].power) * hhat.col(k);
                CDense gram = u.adjoint() * u;
                gram.diagonal().array() += psi;
                v = u * gram.llt().solve(CDense::Identity(nk, nk));
            }
            for (Index k = 0; k < nk; ++k)
            {
                double nrm = v.col(k).norm();
                if (nrm > 0.0)
                    v.col(k) /= nrm;
            }

            CDense y = h.adjoint() * v; // y(l, k) = h_l^H v_k
            for (Index k = 0; k < nk; ++k)
            {
                const std::size_t uk = targets[k];
                const double pk = sys.users[uk].power;
                double *q = acc + k * Q::kCount;
                cdouble g = y(static_cast<Index>(uk), k);
                RVector v2 = v.col(k).cwiseAbs2();
                double self_diag = h.col(static_cast<Index>(uk)).cwiseAbs2().dot(v2);
                double interf = hw.kappa_r_bs * (load.dot(v2) - pk * self_diag);
                for (Index l = 0; l < nu; ++l)
                    if (static_cast<std::size_t>(l) != uk)
                        interf += (1.0 + hw.kappa_t_ue) * sys.users[l].power * std::norm(y(l, k));
                q[Q::kGainRe] += g.real();
                q[Q::kGainIm] += g.imag();
                q[Q::kGainSq] += std::norm(g);
                q[Q::kDiag] += self_diag;
                q[Q::kQuad] += interf;
                double hn = hhat.col(k).squaredNorm();
                q[Q::kNorm2] += hn;
                q[Q::kNorm4] += hn * hn;
            }
        }
        moments.set_count(blk, m);
    });

    const double frac = frame.data_fraction(Direction::Uplink);
    auto rate_of = [&](const std::vector<double> &mean, Index k) {
        std::vector<double> mk(mean.begin() + k * Q::kCount, mean.begin() + (k + 1) * Q::kCount);
        PowerConfig pw{0.0, sys.users[targets[k]].power};
        return frac * std::log2(1.0 + lower_bound_sinr(Direction::Uplink, mk, pw, hw, DataInterference{}));
    };
    UplinkRates out;
    out.users = targets;
    for (Index k = 0; k < nk; ++k)
        out.per_user.push_back(moments.jackknife([&](const std::vector<double> &mean) { return rate_of(mean, k); }));
    out.average = moments.jackknife([&](const std::vector<double> &mean) {
        double s = 0.0;
        for (Index k = 0; k < nk; ++k)
            s += rate_of(mean, k);
        return s / static_cast<double>(nk);
    });
    return out;
}

// The uplink seen by BS `cell`: all UEs are co-users, its own UEs are served.
inline UplinkSystem uplink_system(const CellScenario &sc, const PilotAllocation &alloc, std::size_t cell)
{
    require(cell < sc.n_cells(), "cell index out of range");
    UplinkSystem sys;
    sys.n_antennas = sc.cfg.n_antennas;
    sys.profile = sc.cfg.hardware();
    for (std::size_t u = 0; u < sc.n_ues(); ++u)
        sys.users.push_back({sc.gain[u][cell], sc.cfg.p_ue, alloc.pilot[u], sc.serving[u] == static_cast<int>(cell)});
    return sys;
}

// Lower-bound rate of UE u at its serving BS.
inline Estimate per_user_rate(std::size_t u, Combiner combiner, const CellScenario &sc, const TddFrame &frame,
                              const MonteCarloConfig &mc)
{
    require(u < sc.n_ues(), "UE index out of range");
    auto alloc = allocate_pilots(sc);
    auto rates = uplink_rates(uplink_system(sc, alloc, static_cast<std::size_t>(sc.serving[u])), combiner, frame, mc);
    for (std::size_t k = 0; k < rates.users.size(); ++k)
        if (rates.users[k] == u)
            return rates.per_user[k];
    throw DomainError("UE is not served by its own cell");
}

struct ContaminationCheck
{
    double lhs = 0.0; // kappa_t^UE
    double rhs = 0.0; // sum_l (tr(A R_l) / tr(A R))^2
    bool negligible = false;
};

// Contamination is negligible when kappa_t^UE exceeds the contamination ratio by margin_db.
inline ContaminationCheck contamination_negligibility(double kappa_t_ue, const LmmseOperator &op,
                                                      const CovarianceMatrix &r,
                                                      const std::vector<CovarianceMatrix> &contaminators,
                                                      double margin_db = 10.0)
{
    ContaminationCheck out;
    out.lhs = kappa_t_ue;
    const double own = trace_of_product(op.A, r.matrix()).real();
    require(own > 0.0, "tr(A R) must be positive");
    for (const auto &rl : contaminators)
    {
        double ratio = trace_of_product(op.A, rl.matrix()).real() / own;
        out.rhs += ratio * ratio;
    }
    out.negligible = out.rhs == 0.0 || out.lhs >= out.rhs * std::pow(10.0, margin_db / 10.0);
    return out;
}

inline ContaminationCheck contamination_negligibility(std::size_t u, const PilotAllocation &alloc,
                                                      const CellScenario &sc, const LmmseOperator &op,
                                                      double margin_db = 10.0)
{
    const std::size_t c = static_cast<std::size_t>(sc.serving[u]);
    std::vector<CovarianceMatrix> rl;
    for (std::size_t l : alloc.parallel(u))
        rl.push_back(sc.link_covariance(l, c));
    return contamination_negligibility(sc.cfg.profile.kappa_t_ue, op, sc.link_covariance(u, c), rl, margin_db);
}

} // namespace mimo
