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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "mimo/error.hpp"

namespace mimo {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CDense = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Complex matrix stored either as a diagonal or as a dense block.
// Diagonal storage keeps R = I at N in the thousands cheap; every operation
// falls back to dense storage when an operand is dense.
class ComplexMatrix
{
  public:
    ComplexMatrix() = default;

    static ComplexMatrix dense(CDense m)
    {
        check_finite(m.reshaped());
        ComplexMatrix out;
        out.rows_ = m.rows();
        out.cols_ = m.cols();
        out.is_diag_ = false;
        out.dense_ = std::move(m);
        return out;
    }

    static ComplexMatrix diagonal(CVector d)
    {
        check_finite(d);
        ComplexMatrix out;
        out.rows_ = out.cols_ = d.size();
        out.is_diag_ = true;
        out.diag_ = std::move(d);
        out.hermitian_ = out.diag_.size() == 0 ||
                         out.diag_.imag().cwiseAbs().maxCoeff() <= 1e-12 * std::max(out.max_abs(), 1e-300);
        if (out.hermitian_)
            out.diag_.imag().setZero();
        return out;
    }

    static ComplexMatrix diagonal(const RVector &d) { return diagonal(CVector(d.cast<cdouble>())); }

    static ComplexMatrix identity(Index n, double scale = 1.0) { return diagonal(RVector(RVector::Constant(n, scale))); }

    static ComplexMatrix zero(Index n) { return diagonal(RVector(RVector::Zero(n))); }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_diagonal() const { return is_diag_; }
    bool is_hermitian() const { return hermitian_; }

    // Sets the Hermitian flag; throws unless square and max|M - M^H| <= 1e-12 max|M|.
    ComplexMatrix &mark_hermitian()
    {
        if (!is_square())
            throw DimensionError("Hermitian flag requires a square matrix");
        if (hermitian_)
            return *this;
        double scale = max_abs();
        if (is_diag_)
        {
            if (diag_.size() > 0 && diag_.imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
                throw DomainError("matrix is not Hermitian");
            diag_.imag().setZero();
        }
        else
        {
            double asym = (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff();
            if (asym > 1e-12 * scale)
                throw DomainError("matrix is not Hermitian (max|M - M^H| = " + std::to_string(asym) + ")");
            CDense sym = 0.5 * (dense_ + dense_.adjoint());
            dense_ = std::move(sym);
        }
        hermitian_ = true;
        return *this;
    }

    cdouble operator()(Index i, Index j) const
    {
        if (is_diag_)
            return i == j ? diag_(i) : cdouble(0.0);
        return dense_(i, j);
    }

    // Main diagonal for either storage.
    CVector diagonal_entries() const { return is_diag_ ? diag_ : CVector(dense_.diagonal()); }

    const CVector &diag_storage() const { return diag_; }
    const CDense &dense_storage() const { return dense_; }

    CDense to_dense() const
    {
        if (!is_diag_)
            return dense_;
        CDense m = CDense::Zero(rows_, cols_);
        m.diagonal() = diag_;
        return m;
    }

    cdouble trace() const
    {
        if (!is_square())
            throw DimensionError("trace of a non-square matrix");
        return is_diag_ ? diag_.sum() : dense_.trace();
    }

    double max_abs() const
    {
        if (rows_ == 0 || cols_ == 0)
            return 0.0;
        return is_diag_ ? diag_.cwiseAbs().maxCoeff() : dense_.cwiseAbs().maxCoeff();
    }

    // Squared Frobenius norm.
    double squared_norm() const { return is_diag_ ? diag_.squaredNorm() : dense_.squaredNorm(); }

    ComplexMatrix adjoint() const
    {
        ComplexMatrix out = *this;
        if (is_diag_)
            out.diag_ = diag_.conjugate();
        else
            out.dense_ = dense_.adjoint();
        std::swap(out.rows_, out.cols_);
        return out;
    }

    CVector operator*(const CVector &x) const
    {
        require_dims(x.size() == cols_, "matrix-vector dimension mismatch");
        if (is_diag_)
            return diag_.cwiseProduct(x);
        return dense_ * x;
    }

    // M * X for a block of column vectors.
    CDense apply(const CDense &x) const
    {
        require_dims(x.rows() == cols_, "matrix-block dimension mismatch");
        if (is_diag_)
            return diag_.asDiagonal() * x;
        return dense_ * x;
    }

    friend ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        require_dims(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum dimension mismatch");
        ComplexMatrix out;
        if (a.is_diag_ && b.is_diag_)
            out = diagonal(CVector(a.diag_ + b.diag_));
        else if (a.is_diag_)
        {
            CDense m = b.dense_;
            m.diagonal() += a.diag_;
            out = dense(std::move(m));
        }
        else if (b.is_diag_)
        {
            CDense m = a.dense_;
            m.diagonal() += b.diag_;
            out = dense(std::move(m));
        }
        else
            out = dense(CDense(a.dense_ + b.dense_));
        out.hermitian_ = out.hermitian_ || (a.hermitian_ && b.hermitian_);
        return out;
    }

    friend ComplexMatrix operator*(double s, const ComplexMatrix &a)
    {
        ComplexMatrix out = a;
        if (a.is_diag_)
            out.diag_ *= s;
        else
            out.dense_ *= s;
        return out;
    }

    friend ComplexMatrix operator*(cdouble s, const ComplexMatrix &a)
    {
        if (s.imag() == 0.0)
            return s.real() * a;
        ComplexMatrix out = a;
        if (a.is_diag_)
            out.diag_ *= s;
        else
            out.dense_ *= s;
        out.hermitian_ = false;
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) { return a + (-1.0) * b; }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        require_dims(a.cols_ == b.rows_, "matrix product dimension mismatch");
        if (a.is_diag_ && b.is_diag_)
            return diagonal(CVector(a.diag_.cwiseProduct(b.diag_)));
        if (a.is_diag_)
            return dense(CDense(a.diag_.asDiagonal() * b.dense_));
        if (b.is_diag_)
            return dense(CDense(a.dense_ * b.diag_.asDiagonal()));
        return dense(CDense(a.dense_ * b.dense_));
    }

  private:
    template <typename V>
    static void check_finite(const V &v)
    {
        if (!v.allFinite())
            throw DomainError("matrix entries must be finite");
    }

    Index rows_ = 0;
    Index cols_ = 0;
    bool is_diag_ = true;
    bool hermitian_ = false;
    CVector diag_;
    CDense dense_;
};

// tr(A B) without forming the product.
inline cdouble trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b)
{
    require_dims(a.cols() == b.rows() && a.rows() == b.cols(), "trace_of_product dimension mismatch");
    if (a.is_diagonal() && b.is_diagonal())
        return a.diag_storage().cwiseProduct(b.diag_storage()).sum();
    if (a.is_diagonal())
        return a.diag_storage().cwiseProduct(b.dense_storage().diagonal()).sum();
    if (b.is_diagonal())
        return a.dense_storage().diagonal().cwiseProduct(b.diag_storage()).sum();
    return a.dense_storage().cwiseProduct(b.dense_storage().transpose()).sum();
}

// Diagonal part of a square matrix as a diagonal ComplexMatrix.
inline ComplexMatrix diagonal_part(const ComplexMatrix &m)
{
    require_dims(m.is_square(), "diagonal_part of a non-square matrix");
    return ComplexMatrix::diagonal(m.diagonal_entries());
}

} // namespace mimo
