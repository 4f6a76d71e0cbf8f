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

#include "mimo/impairments/hardware.hpp"
#include "mimo/numerics/rng.hpp"

using namespace mimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Impairments - profile validation")
{
    CHECK_NOTHROW(HardwareProfile::uniform(0.15 * 0.15).validate());
    CHECK_NOTHROW(HardwareProfile::ideal().validate());
    CHECK_THROWS_AS(HardwareProfile::uniform(-0.1).validate(), DomainError);
    CHECK_THROWS_AS(HardwareProfile::uniform(1.5).validate(), DomainError);
    CHECK_NOTHROW(HardwareProfile::uniform(1.5).validate(std::numeric_limits<double>::infinity()));
    CHECK_THROWS_AS(HardwareProfile::uniform(0.01, 0.0).validate(), DomainError);
    HardwareProfile p;
    p.sigma2_ue = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("Impairments - downlink distortion")
{
    const Index n = 4;
    CVector h(n);
    h << cdouble(1, 2), cdouble(-0.5, 0.3), cdouble(0, 1), cdouble(2, -1);

    auto zero = dl_distortion_covariances(CovarianceMatrix::identity(n, 3.0), h, HardwareProfile::ideal());
    CHECK(zero.upsilon_t_bs.max_abs() == 0.0);
    CHECK(zero.upsilon_r_ue == 0.0);

    HardwareProfile hw{0.01, 0.0, 0.0, 0.04};
    const double p = 5.0;
    auto d = dl_distortion_covariances(CovarianceMatrix::identity(n, p / n), h, hw);
    CHECK(d.upsilon_t_bs.is_diagonal());
    for (Index i = 0; i < n; ++i)
        CHECK_THAT(d.upsilon_t_bs(i, i).real(), WithinRel(0.01 * p / n, 1e-14));
    CHECK_THAT(d.upsilon_r_ue, WithinRel(0.04 * p * h.squaredNorm() / n, 1e-14));

    // Rank-one precoder W = p v v^H gives h^T W h^* = p |h^T v|^2.
    CVector v(n);
    v << cdouble(0.5, 0), cdouble(0, 0.5), cdouble(-0.5, 0), cdouble(0.5, 0.5);
    v.normalize();
    CDense w = p * v * v.adjoint();
    auto dr = dl_distortion_covariances(CovarianceMatrix(ComplexMatrix::dense(w)), h, hw);
    CHECK_THAT(dr.upsilon_r_ue, WithinRel(0.04 * p * std::norm(h.cwiseProduct(v).sum()), 1e-12));
    for (Index i = 0; i < n; ++i)
        CHECK_THAT(dr.upsilon_t_bs(i, i).real(), WithinRel(0.01 * p * std::norm(v(i)), 1e-12));

    CVector e2 = CVector::Zero(n);
    e2(1) = 1.0;
    CDense w1 = CDense::Zero(n, n);
    w1(0, 0) = p;
    auto orth = dl_distortion_covariances(CovarianceMatrix(ComplexMatrix::dense(w1)), e2, hw);
    CHECK(orth.upsilon_r_ue == 0.0);
    CHECK_THROWS_AS(dl_distortion_covariances(CovarianceMatrix::identity(3), h, hw), DimensionError);
}

TEST_CASE("Impairments - uplink distortion")
{
    const Index n = 5;
    CVector ones = CVector::Ones(n);
    HardwareProfile hw{0.0, 0.0025, 0.0025, 0.0};
    auto z = ul_distortion_covariances(0.0, ones, hw);
    CHECK(z.upsilon_t_ue == 0.0);
    CHECK(z.upsilon_r_bs.max_abs() == 0.0);

    auto u = ul_distortion_covariances(1.0, ones, hw);
    for (Index i = 0; i < n; ++i)
        CHECK_THAT(u.upsilon_r_bs(i, i).real(), WithinRel(0.0025, 1e-14));
    CHECK_THAT(ul_distortion_covariances(100.0, ones, hw).upsilon_t_ue, WithinRel(0.25, 1e-14));
    CHECK_THROWS_AS(ul_distortion_covariances(-1.0, ones, hw), DomainError);
}

TEST_CASE("Impairments - distortion scales linearly with power")
{
    RngStream rng(11);
    CVector h(6);
    rng.fill_complex_normal(h);
    HardwareProfile hw{0.02, 0.03, 0.04, 0.05};
    for (double p : {0.1, 1.0, 37.0})
    {
        auto a = ul_distortion_covariances(p, h, hw);
        auto b = ul_distortion_covariances(2.0 * p, h, hw);
        CHECK_THAT(b.upsilon_t_ue, WithinRel(2.0 * a.upsilon_t_ue, 1e-14));
        for (Index i = 0; i < 6; ++i)
        {
            CHECK_THAT(b.upsilon_r_bs(i, i).real(), WithinRel(2.0 * a.upsilon_r_bs(i, i).real(), 1e-14));
            CHECK(a.upsilon_r_bs(i, i).real() >= 0.0);
        }
        auto c = dl_distortion_covariances(CovarianceMatrix::identity(6, p), h, hw);
        auto e = dl_distortion_covariances(CovarianceMatrix::identity(6, 2.0 * p), h, hw);
        CHECK_THAT(e.upsilon_r_ue, WithinRel(2.0 * c.upsilon_r_ue, 1e-14));
        CHECK(c.upsilon_r_ue >= 0.0);
    }
}

TEST_CASE("Impairments - EVM mapping")
{
    CHECK_THAT(evm(0.0025), WithinRel(0.05, 1e-14));
    CHECK(evm(0.0) == 0.0);
    CHECK_THAT(kappa_from_evm(0.08), WithinRel(0.0064, 1e-14));
    CHECK_THAT(kappa_from_evm(0.175), WithinRel(0.030625, 1e-14));
    CHECK_THROWS_AS(evm(-0.1), DomainError);
    CHECK_THROWS_AS(kappa_from_evm(-0.1), DomainError);
}

TEST_CASE("Impairments - scaling laws")
{
    for (Index n : {1, 10, 1000})
        CHECK(scaled_kappa(0.0025, 0.0, 1, n) == 0.0025);
    CHECK_THAT(scaled_kappa(0.0025, 0.5, 1, 256), WithinRel(0.04, 1e-14));
    CHECK_THAT(evm(scaled_kappa(0.0025, 0.5, 1, 256)), WithinRel(0.2, 1e-14));
    CHECK_THAT(scaled_kappa(0.0025, 2.0, 1, 10), WithinRel(0.25, 1e-14));
    CHECK_THAT(scaled_kappa(0.0025, 1.0, 4, 16), WithinRel(0.01, 1e-14));
    CHECK_THROWS_AS(scaled_kappa(0.0025, 2.0, 1, 100), DomainError);
    CHECK_NOTHROW(scaled_kappa(0.0025, 2.0, 1, 100, std::numeric_limits<double>::infinity()));
    CHECK_THROWS_AS(scaled_kappa(0.0025, 1.0, 1, 0), DomainError);

    ImpairmentScaling s{0.25, 0.5, 0.0025, 1};
    for (Index n : {1, 16, 81})
    {
        double kt = scaled_kappa_t(s, n);
        CHECK_THAT(evm(kt) * evm(kt), WithinRel(kt, 1e-14));
        CHECK_THAT(kt, WithinRel(0.0025 * std::pow(n, 0.25), 1e-14));
        CHECK_THAT(scaled_kappa_r(s, n), WithinRel(0.0025 * std::sqrt(n), 1e-14));
    }
}

TEST_CASE("Impairments - phase-noise variance")
{
    PhaseNoiseConfig common{1e-4, 1e-4, OscillatorMode::CommonOscillator};
    CHECK(phase_noise_variance(0.0, common, 1.0, 50.0, 1.0) == 0.0);
    CHECK_THAT(phase_noise_variance(20.0, common, 2.0, 50.0, 1.0), WithinRel(2.0 * 2.0 * 20.0 * 1e-4 * 50.0, 1e-14));

    PhaseNoiseConfig separate = common;
    separate.mode = OscillatorMode::SeparateOscillators;
    CHECK_THAT(phase_noise_variance(20.0, separate, 2.0, 50.0, 1.0),
               WithinRel(2.0 * 20.0 * 1e-4 * (50.0 + 1.0), 1e-14));

    // m2_full grows like N while m2_diag stays O(1): the BS term grows like tN
    // with a common oscillator and like t with separate ones.
    PhaseNoiseConfig bs_only_sep{1e-4, 0.0, OscillatorMode::SeparateOscillators};
    PhaseNoiseConfig bs_only_com{1e-4, 0.0, OscillatorMode::CommonOscillator};
    for (double n : {10.0, 100.0, 1000.0})
    {
        CHECK_THAT(phase_noise_variance(10.0, bs_only_sep, 1.0, n, 1.0), WithinRel(1e-3, 1e-14));
        CHECK_THAT(phase_noise_variance(10.0, bs_only_com, 1.0, n, 1.0), WithinRel(1e-3 * n, 1e-14));
        CHECK_THAT(phase_noise_variance(10.0, bs_only_sep, 1.0, n, 1.0) / n, WithinRel(1e-3 / n, 1e-14));
    }
    CHECK_THROWS_AS(phase_noise_variance(-1.0, common, 1.0, 1.0, 1.0), DomainError);
}
