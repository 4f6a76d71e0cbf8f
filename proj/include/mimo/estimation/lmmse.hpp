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

#include <Eigen/Cholesky>

#include <cmath>

#include "mimo/impairments/hardware.hpp"
#include "mimo/numerics/covariance.hpp"

namespace mimo {

enum class DistortionCorrelation
{
    Uncorrelated,
    FullyCorrelated
};

struct PilotConfig
{
    cdouble d{1.0, 0.0};
    int length = 1; // B
    DistortionCorrelation correlation = DistortionCorrelation::Uncorrelated;

    // Real pilot d = sqrt(p).
    static PilotConfig with_power(double p, int length = 1,
                                  DistortionCorrelation corr = DistortionCorrelation::Uncorrelated)
    {
        require(p > 0.0, "pilot power must be positive");
        return {cdouble(std::sqrt(p), 0.0), length, corr};
    }

    double power() const { return std::norm(d); }

    void validate(int t_coher = 0) const
    {
        require(std::norm(d) > 0.0 && std::isfinite(std::norm(d)), "pilot symbol must be non-zero and finite");
        require(length >= 1, "pilot length must be at least 1");
        require(t_coher <= 0 || length <= t_coher, "pilot length exceeds the coherence period");
    }
};

struct LmmseOperator
{
    ComplexMatrix A;    // estimator
    ComplexMatrix Zbar; // observation covariance
    ComplexMatrix C;    // error covariance
    double mse = 0.0;   // tr(C)
    PilotConfig pilot;
};

namespace detail {

inline void check_estimation_inputs(const CovarianceMatrix &r, const CovarianceMatrix &s, const PilotConfig &pilot,
                                    const HardwareProfile &profile)
{
    require_dims(r.size() == s.size(), "R and S dimensions differ");
    pilot.validate();
    require(profile.sigma2_bs > 0.0, "sigma2_bs must be positive for an invertible observation covariance");
    require(profile.kappa_t_ue >= 0.0 && profile.kappa_r_bs >= 0.0, "kappa must be non-negative");
}

// M^{-1} B for Hermitian positive definite M.
inline CDense hermitian_solve(const ComplexMatrix &m, const CDense &b)
{
    if (m.is_diagonal())
        return m.diag_storage().cwiseInverse().asDiagonal() * b;
    Eigen::LLT<CDense> llt(m.dense_storage());
    if (llt.info() != Eigen::Success)
        throw FactorizationError("observation covariance is not positive definite");
    return llt.solve(b);
}

} // namespace detail

// Zbar = p(1 + kappa_t^UE) R + p kappa_r^BS D_R + S + sigma2_BS I.
inline ComplexMatrix observation_covariance(const CovarianceMatrix &r, const CovarianceMatrix &s,
                                            const PilotConfig &pilot, const HardwareProfile &profile)
{
    detail::check_estimation_inputs(r, s, pilot, profile);
    const double p = pilot.power();
    ComplexMatrix z = p * (1.0 + profile.kappa_t_ue) * r.matrix() +
                      p * profile.kappa_r_bs * diagonal_part(r.matrix()) + s.matrix() +
                      ComplexMatrix::identity(r.size(), profile.sigma2_bs);
    z.mark_hermitian();
    return z;
}

inline LmmseOperator build_lmmse(const CovarianceMatrix &r, const CovarianceMatrix &s, const PilotConfig &pilot,
                                 const HardwareProfile &profile)
{
    LmmseOperator op;
    op.pilot = pilot;
    op.Zbar = observation_covariance(r, s, pilot, profile);
    const double p = pilot.power();
    const cdouble dc = std::conj(pilot.d);
    if (r.is_diagonal() && op.Zbar.is_diagonal())
    {
        const CVector &rd = r.matrix().diag_storage();
        const CVector &zd = op.Zbar.diag_storage();
        op.A = ComplexMatrix::diagonal(CVector(dc * rd.cwiseQuotient(zd)));
        RVector c = (rd - p * rd.cwiseProduct(rd).cwiseQuotient(zd)).real().cwiseMax(0.0);
        op.C = ComplexMatrix::diagonal(c);
    }
    else
    {
        // X = Zbar^{-1} R, so R Zbar^{-1} = X^H and R Zbar^{-1} R = X^H R.
        CDense rd = r.matrix().to_dense();
        CDense x = detail::hermitian_solve(op.Zbar, rd);
        op.A = ComplexMatrix::dense(CDense(dc * x.adjoint()));
        CDense c = rd - p * (x.adjoint() * rd);
        op.C = ComplexMatrix::dense(CDense(0.5 * (c + c.adjoint())));
        op.C.mark_hermitian();
    }
    op.mse = op.C.trace().real();
    return op;
}

inline CVector estimate(const LmmseOperator &op, const CVector &z)
{
    require_dims(z.size() == op.A.cols(), "received pilot dimension mismatch");
    return op.A * z;
}

// tr(R - d At R - d^* R At^H + At Zbar At^H) for any linear estimator At.
inline double mse_of_linear_estimator(const ComplexMatrix &at, const CovarianceMatrix &r, const CovarianceMatrix &s,
                                      const PilotConfig &pilot, const HardwareProfile &profile)
{
    require_dims(at.rows() == r.size() && at.cols() == r.size(), "estimator dimension mismatch");
    ComplexMatrix z = observation_covariance(r, s, pilot, profile);
    cdouble cross = pilot.d * trace_of_product(at, r.matrix());
    cdouble quad = trace_of_product(at * z, at.adjoint());
    return r.trace() - 2.0 * cross.real() + quad.real();
}

// Impairment-ignoring MMSE estimator d^* R (p R + S + sigma2 I)^{-1}.
inline ComplexMatrix conventional_estimator(const CovarianceMatrix &r, const CovarianceMatrix &s,
                                            const PilotConfig &pilot, double sigma2_bs)
{
    HardwareProfile ideal = HardwareProfile::ideal(sigma2_bs);
    return build_lmmse(r, s, pilot, ideal).A;
}

inline double relative_mse(double mse, const CovarianceMatrix &r)
{
    double tr = r.trace();
    require(tr > 0.0, "relative MSE needs tr(R) > 0");
    return mse / tr;
}

// Per-element error floor of R = lambda I as p -> infinity.
inline double estimation_error_floor(double lambda, const HardwareProfile &profile)
{
    const double k = profile.kappa_t_ue + profile.kappa_r_bs;
    return lambda * k / (1.0 + k);
}

} // namespace mimo
