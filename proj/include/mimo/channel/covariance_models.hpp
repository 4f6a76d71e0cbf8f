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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "mimo/numerics/covariance.hpp"

namespace mimo {

enum class CovarianceModel
{
    Uncorrelated,
    ExponentialCorrelation,
    OneRing
};

struct CovarianceSpec
{
    CovarianceModel model = CovarianceModel::Uncorrelated;
    Index n_antennas = 1;
    double scale = 1.0; // delta = tr(R)/N

    // Exponential correlation r = corr_magnitude * exp(j corr_phase).
    double corr_magnitude = 0.0;
    double corr_phase = 0.0; // rad

    // One-ring.
    double mean_aoa_deg = 30.0;
    double angular_spread_deg = 10.0;
    double spacing_wavelengths = 0.5;

    void validate() const
    {
        require(n_antennas >= 1, "N must be at least 1");
        require(scale > 0.0 && std::isfinite(scale), "covariance scale must be positive");
        require(corr_magnitude >= 0.0 && corr_magnitude <= 1.0, "|r| must lie in [0, 1]");
        require(std::isfinite(corr_phase), "arg(r) must be finite");
        require(angular_spread_deg > 0.0 && angular_spread_deg <= 90.0, "angular spread must lie in (0, 90] degrees");
        require(spacing_wavelengths > 0.0, "antenna spacing must be positive");
    }
};

inline CovarianceMatrix covariance_uncorrelated(Index n, double scale = 1.0)
{
    require(n >= 1 && scale > 0.0, "uncorrelated covariance requires N >= 1 and scale > 0");
    return CovarianceMatrix::identity(n, scale);
}

// [R]_{ij} = delta r^{j-i} for i <= j, conjugate below the diagonal.
inline CovarianceMatrix covariance_exponential(const CovarianceSpec &spec)
{
    require(spec.model == CovarianceModel::ExponentialCorrelation, "spec is not an exponential-correlation spec");
    spec.validate();
    const Index n = spec.n_antennas;
    if (spec.corr_magnitude == 0.0)
        return CovarianceMatrix::identity(n, spec.scale);
    CVector powers(n);
    for (Index k = 0; k < n; ++k)
        powers(k) = spec.scale * std::polar(std::pow(spec.corr_magnitude, static_cast<double>(k)),
                                            spec.corr_phase * static_cast<double>(k));
    CDense m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            m(i, j) = i <= j ? powers(j - i) : std::conj(powers(i - j));
    return CovarianceMatrix(ComplexMatrix::dense(std::move(m)));
}

// Uniform scatterer power over [mean - spread, mean + spread]:
// [R]_{mn} = delta/(2 spread) * integral exp(j 2 pi s (n - m) sin(theta)) dtheta,
// the same lag orientation as the exponential model.
inline CovarianceMatrix covariance_one_ring(const CovarianceSpec &spec)
{
    require(spec.model == CovarianceModel::OneRing, "spec is not a one-ring spec");
    spec.validate();
    using boost::math::quadrature::gauss_kronrod;
    constexpr double tol = 1e-10;
    const double deg = std::numbers::pi / 180.0;
    const double mid = spec.mean_aoa_deg * deg;
    const double half = spec.angular_spread_deg * deg;
    const Index n = spec.n_antennas;

    // Mean of exp(j w sin(mid + half u)) over u in [-1, 1].
    CVector lag(n);
    lag(0) = spec.scale;
    for (Index k = 1; k < n; ++k)
    {
        const double w = 2.0 * std::numbers::pi * spec.spacing_wavelengths * static_cast<double>(k);
        double err_re = 0.0, err_im = 0.0;
        double re = gauss_kronrod<double, 61>::integrate(
            [=](double u) { return std::cos(w * std::sin(mid + half * u)); }, -1.0, 1.0, 12, 1e-12, &err_re);
        double im = gauss_kronrod<double, 61>::integrate(
            [=](double u) { return std::sin(w * std::sin(mid + half * u)); }, -1.0, 1.0, 12, 1e-12, &err_im);
        double abs_err = 0.5 * spec.scale * std::hypot(err_re, err_im);
        if (abs_err > tol)
            throw ConvergenceError("one-ring quadrature reached only absolute error " + std::to_string(abs_err));
        lag(k) = 0.5 * spec.scale * cdouble(re, im);
    }
    CDense m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            m(i, j) = i <= j ? lag(j - i) : std::conj(lag(i - j));
    return CovarianceMatrix(ComplexMatrix::dense(std::move(m)));
}

inline CovarianceMatrix make_covariance(const CovarianceSpec &spec)
{
    switch (spec.model)
    {
    case CovarianceModel::Uncorrelated:
        spec.validate();
        return covariance_uncorrelated(spec.n_antennas, spec.scale);
    case CovarianceModel::ExponentialCorrelation:
        return covariance_exponential(spec);
    case CovarianceModel::OneRing:
        return covariance_one_ring(spec);
    }
    throw DomainError("unknown covariance model");
}

// p tr(R) / (N sigma^2).
inline double average_snr(double p, const CovarianceMatrix &r, double sigma2)
{
    require(p >= 0.0, "power must be non-negative");
    require(sigma2 > 0.0, "noise variance must be positive");
    return p * r.trace() / (static_cast<double>(r.size()) * sigma2);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace mimo
