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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "mimo/channel/covariance_models.hpp"

using namespace mimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CovarianceSpec exponential(Index n, double mag, double phase, double scale = 1.0)
{
    CovarianceSpec s;
    s.model = CovarianceModel::ExponentialCorrelation;
    s.n_antennas = n;
    s.corr_magnitude = mag;
    s.corr_phase = phase;
    s.scale = scale;
    return s;
}

CovarianceSpec one_ring(Index n, double aoa, double spread, double scale = 1.0)
{
    CovarianceSpec s;
    s.model = CovarianceModel::OneRing;
    s.n_antennas = n;
    s.mean_aoa_deg = aoa;
    s.angular_spread_deg = spread;
    s.scale = scale;
    return s;
}

// Composite Simpson rule for delta/(2 spread) int exp(j 2 pi s k sin t) dt.
cdouble one_ring_simpson(int lag, double aoa, double spread, double spacing, double scale)
{
    const double deg = std::numbers::pi / 180.0;
    const double a = (aoa - spread) * deg, b = (aoa + spread) * deg;
    const int m = 20000;
    const double h = (b - a) / m;
    const double w = 2.0 * std::numbers::pi * spacing * lag;
    cdouble sum = 0.0;
    for (int i = 0; i <= m; ++i)
    {
        double c = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += c * std::polar(1.0, w * std::sin(a + i * h));
    }
    return scale / (b - a) * sum * h / 3.0;
}

RVector sorted_eigenvalues(const CovarianceMatrix &r)
{
    Eigen::SelfAdjointEigenSolver<CDense> es(r.matrix().to_dense(), Eigen::EigenvaluesOnly);
    RVector ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
}

} // namespace

TEST_CASE("Channel - exponential model entries")
{
    auto r = covariance_exponential(exponential(2, 0.7, 0.0));
    CHECK_THAT(r.matrix()(0, 0).real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(r.matrix()(0, 1).real(), WithinAbs(0.7, 1e-15));
    CHECK_THAT(r.matrix()(1, 0).real(), WithinAbs(0.7, 1e-15));
    CHECK_THAT(r.matrix()(1, 1).real(), WithinAbs(1.0, 1e-15));

    auto r0 = covariance_exponential(exponential(5, 0.0, 1.0, 3.0));
    CHECK(r0.is_diagonal());
    CHECK_THAT(r0.matrix().to_dense().cwiseAbs().maxCoeff(), WithinAbs(3.0, 0.0));
    CHECK_THAT(r0.trace(), WithinAbs(15.0, 1e-14));

    const double th = std::numbers::pi / 3.0;
    auto r3 = covariance_exponential(exponential(3, 0.5, th, 2.0));
    cdouble expected = 2.0 * std::pow(std::polar(0.5, th), 2);
    CHECK(std::abs(r3.matrix()(0, 2) - expected) < 1e-14);
    CHECK(std::abs(r3.matrix()(0, 2) - std::polar(0.5, 2.0 * th)) < 1e-14);
    CHECK(std::abs(r3.matrix()(2, 0) - std::conj(expected)) < 1e-14);
}

TEST_CASE("Channel - exponential model rejects invalid input")
{
    CHECK_THROWS_AS(covariance_exponential(exponential(4, 1.2, 0.0)), DomainError);
    CHECK_THROWS_AS(covariance_exponential(exponential(0, 0.5, 0.0)), DomainError);
    CHECK_THROWS_AS(covariance_exponential(one_ring(4, 30, 10)), DomainError);
}

TEST_CASE("Channel - exponential eigenvalues do not depend on the phase")
{
    RVector ref = sorted_eigenvalues(covariance_exponential(exponential(40, 0.7, 0.0)));
    for (double ph : {0.3, std::numbers::pi / 2.0, 2.5, -1.0})
    {
        RVector ev = sorted_eigenvalues(covariance_exponential(exponential(40, 0.7, ph)));
        CHECK((ev - ref).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("Channel - one-ring diagonal, zero-spread limit and quadrature")
{
    auto r = covariance_one_ring(one_ring(8, 30.0, 10.0, 2.5));
    for (Index i = 0; i < 8; ++i)
        CHECK_THAT(r.matrix()(i, i).real(), WithinAbs(2.5, 1e-14));
    CHECK_THAT(r.trace(), WithinRel(20.0, 1e-14));
    CHECK(r.matrix().is_hermitian());

    for (int k = 1; k < 8; ++k)
    {
        cdouble oracle = one_ring_simpson(k, 30.0, 10.0, 0.5, 2.5);
        CHECK(std::abs(r.matrix()(0, k) - oracle) < 1e-10);
    }
    auto r20 = covariance_one_ring(one_ring(6, 30.0, 20.0));
    for (int k = 1; k < 6; ++k)
        CHECK(std::abs(r20.matrix()(0, k) - one_ring_simpson(k, 30.0, 20.0, 0.5, 1.0)) < 1e-10);

    auto point = covariance_one_ring(one_ring(2, 30.0, 1e-7, 1.5));
    CHECK(std::abs(point.matrix()(0, 1) - cdouble(0.0, 1.5)) < 1e-8);
}

TEST_CASE("Channel - one-ring covariance is rank deficient")
{
    auto r = covariance_one_ring(one_ring(50, 30.0, 10.0));
    RVector ev = sorted_eigenvalues(r);
    CHECK(ev.minCoeff() > -1e-10);
    Index rank = (ev.array() >= 1e-6).count();
    CHECK(rank < 50);
    CHECK(rank > 5);
    CHECK_THAT(ev.sum(), WithinRel(50.0, 1e-12));
    CHECK_NOTHROW(r.sqrt_factor());
}

TEST_CASE("Channel - make_covariance dispatch and validation")
{
    CovarianceSpec s;
    s.n_antennas = 4;
    s.scale = 2.0;
    auto r = make_covariance(s);
    CHECK(r.is_diagonal());
    CHECK_THAT(r.trace(), WithinAbs(8.0, 1e-15));
    s.angular_spread_deg = 0.0;
    CHECK_THROWS_AS(make_covariance(one_ring(4, 30.0, 0.0)), DomainError);
    CHECK_THROWS_AS(make_covariance(one_ring(4, 30.0, 91.0)), DomainError);
    CHECK_THROWS_AS(covariance_uncorrelated(3, 0.0), DomainError);
}

TEST_CASE("Channel - average SNR")
{
    CHECK_THAT(average_snr(1.0, CovarianceMatrix::identity(7), 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(average_snr(100.0, CovarianceMatrix::identity(7), 1.0), WithinAbs(100.0, 1e-12));
    CHECK_THAT(linear_to_db(average_snr(100.0, CovarianceMatrix::identity(3), 1.0)), WithinAbs(20.0, 1e-12));
    CHECK_THAT(average_snr(1.0, CovarianceMatrix::diagonal(RVector{{2.0, 0.0}}), 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(average_snr(-1.0, CovarianceMatrix::identity(2), 1.0), DomainError);
    CHECK_THROWS_AS(average_snr(1.0, CovarianceMatrix::identity(2), 0.0), DomainError);
    CHECK_THAT(db_to_linear(linear_to_db(37.5)), WithinRel(37.5, 1e-14));
}

TEST_CASE("Channel - generated covariances have trace N delta")
{
    for (Index n : {1, 3, 17})
    {
        CHECK_THAT(covariance_exponential(exponential(n, 0.9, 0.4, 1.7)).trace(), WithinRel(1.7 * n, 1e-14));
        CHECK_THAT(covariance_one_ring(one_ring(n, 30.0, 20.0, 1.7)).trace(), WithinRel(1.7 * n, 1e-14));
        RVector ev = sorted_eigenvalues(covariance_exponential(exponential(n, 0.9, 0.4, 1.7)));
        CHECK(ev.minCoeff() > 0.0);
    }
}
