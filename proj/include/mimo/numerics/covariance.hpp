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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <memory>
#include <mutex>

#include "mimo/numerics/complex_matrix.hpp"

namespace mimo {

// Hermitian PSD covariance. PSD is checked when the square-root factor is
// first needed (eigenvalues below -1e-10 ||R|| are rejected, the rest are
// clamped at zero). The factor is cached and shared between copies.
class CovarianceMatrix
{
  public:
    CovarianceMatrix() : CovarianceMatrix(ComplexMatrix::zero(0)) {}

    explicit CovarianceMatrix(ComplexMatrix m) : m_(std::move(m)), cache_(std::make_shared<Cache>())
    {
        require_dims(m_.is_square(), "covariance must be square");
        m_.mark_hermitian();
        if (m_.is_diagonal() && m_.rows() > 0)
        {
            double lo = m_.diag_storage().real().minCoeff();
            if (lo < -kPsdTolerance * m_.max_abs())
                throw FactorizationError("diagonal covariance has a negative entry");
        }
    }

    static CovarianceMatrix identity(Index n, double scale = 1.0)
    {
        return CovarianceMatrix(ComplexMatrix::identity(n, scale));
    }

    static CovarianceMatrix diagonal(const RVector &d) { return CovarianceMatrix(ComplexMatrix::diagonal(d)); }

    static CovarianceMatrix zero(Index n) { return CovarianceMatrix(ComplexMatrix::zero(n)); }

    const ComplexMatrix &matrix() const { return m_; }
    Index size() const { return m_.rows(); }
    bool is_diagonal() const { return m_.is_diagonal(); }
    double trace() const { return m_.trace().real(); }
    RVector diagonal_entries() const { return m_.diagonal_entries().real(); }

    // Hermitian square root F = F^H with F F = R.
    const ComplexMatrix &sqrt_factor() const
    {
        std::call_once(cache_->once, [this] { cache_->factor = compute_sqrt(m_); });
        return cache_->factor;
    }

    // Eigenvalues in ascending order, clamped at zero.
    RVector eigenvalues() const
    {
        if (m_.is_diagonal())
        {
            RVector d = m_.diag_storage().real().cwiseMax(0.0);
            std::sort(d.data(), d.data() + d.size());
            return d;
        }
        Eigen::SelfAdjointEigenSolver<CDense> es(m_.dense_storage(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseMax(0.0);
    }

    friend CovarianceMatrix operator+(const CovarianceMatrix &a, const CovarianceMatrix &b)
    {
        return CovarianceMatrix(a.m_ + b.m_);
    }

    friend CovarianceMatrix operator*(double s, const CovarianceMatrix &a)
    {
        require(s >= 0.0, "covariance scale must be non-negative");
        return CovarianceMatrix(s * a.m_);
    }

    static constexpr double kPsdTolerance = 1e-10;

  private:
    struct Cache
    {
        std::once_flag once;
        ComplexMatrix factor;
    };

    static ComplexMatrix compute_sqrt(const ComplexMatrix &m)
    {
        double scale = m.max_abs();
        if (m.is_diagonal())
        {
            RVector d = m.diag_storage().real();
            if (d.size() > 0 && d.minCoeff() < -kPsdTolerance * scale)
                throw FactorizationError("covariance is not PSD");
            return ComplexMatrix::diagonal(RVector(d.cwiseMax(0.0).cwiseSqrt()));
        }
        Eigen::SelfAdjointEigenSolver<CDense> es(m.dense_storage());
        if (es.info() != Eigen::Success)
            throw FactorizationError("Hermitian eigen-decomposition failed");
        RVector lambda = es.eigenvalues();
        double norm = lambda.cwiseAbs().maxCoeff();
        if (lambda.minCoeff() < -kPsdTolerance * norm)
            throw FactorizationError("covariance is not PSD within 1e-10 relative tolerance (min eigenvalue " +
                                     std::to_string(lambda.minCoeff()) + ")");
        RVector root = lambda.cwiseMax(0.0).cwiseSqrt();
        const CDense &v = es.eigenvectors();
        CDense f = v * root.asDiagonal() * v.adjoint();
        ComplexMatrix out = ComplexMatrix::dense(std::move(f));
        out.mark_hermitian();
        return out;
    }

    ComplexMatrix m_;
    std::shared_ptr<Cache> cache_;
};

} // namespace mimo
