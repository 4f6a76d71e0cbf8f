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

#include <cstdint>
#include <random>

#include "mimo/numerics/complex_matrix.hpp"

namespace mimo {

// Deterministic random stream identified by (seed, substream id).
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed = 0, std::uint64_t substream_id = 0)
        : seed_(seed), substream_(substream_id), engine_(make_engine(seed, substream_id))
    {
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t substream_id() const { return substream_; }

    // Independent child stream; children of equal streams with equal ids are equal.
    RngStream substream(std::uint64_t child) const
    {
        return RngStream(seed_, splitmix64(splitmix64(substream_) ^ (child + 0x632be59bd9b4e019ULL)));
    }

    double normal() { return normal_(engine_); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    // CN(0, variance): real and imaginary parts each N(0, variance/2).
    cdouble complex_normal(double variance = 1.0)
    {
        double s = std::sqrt(0.5 * variance);
        double re = normal();
        double im = normal();
        return {s * re, s * im};
    }

    // Fills with i.i.d. CN(0, 1) entries, column by column.
    void fill_complex_normal(CDense &out)
    {
        for (Index j = 0; j < out.cols(); ++j)
            for (Index i = 0; i < out.rows(); ++i)
                out(i, j) = complex_normal();
    }

    void fill_complex_normal(CVector &out)
    {
        for (Index i = 0; i < out.size(); ++i)
            out(i) = complex_normal();
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t sub)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub >> 32)};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace mimo
