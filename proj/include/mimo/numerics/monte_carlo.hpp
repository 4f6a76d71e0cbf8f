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
#include <cstddef>
#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "mimo/numerics/rng.hpp"

namespace mimo {

// Runs body(i) for i in [0, count). Implementations may run bodies concurrently.
using ParallelFor = std::function<void(std::size_t count, const std::function<void(std::size_t)> &body)>;

inline void sequential_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
    for (std::size_t i = 0; i < count; ++i)
        body(i);
}

struct MonteCarloConfig
{
    std::size_t trials = 10000;
    RngStream rng{};
    double rel_se_target = 0.01;
    // Trials per block; block b always draws from rng.substream(b).
    std::size_t block_size = 64;
    // Empty means sequential.
    ParallelFor parallel_for;

    std::size_t blocks() const { return (trials + block_size - 1) / block_size; }

    std::size_t trials_in_block(std::size_t b) const
    {
        std::size_t begin = b * block_size;
        return std::min(block_size, trials - begin);
    }

    void for_each_block(const std::function<void(std::size_t)> &body) const
    {
        if (parallel_for)
            parallel_for(blocks(), body);
        else
            sequential_for(blocks(), body);
    }
};

// Monte-Carlo result with its standard error.
struct Estimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;

    bool meets(double rel_target, double abs_floor = 0.0) const
    {
        return std_error <= rel_target * std::abs(value) + abs_floor;
    }
};

// Per-block sums of several per-trial quantities. Each block is written by a
// single worker; reductions run over blocks in index order.
class BlockMoments
{
  public:
    BlockMoments(std::size_t blocks, std::size_t quantities)
        : q_(quantities), sums_(blocks * quantities, 0.0), counts_(blocks, 0)
    {
    }

    std::size_t blocks() const { return counts_.size(); }
    std::size_t quantities() const { return q_; }

    double *block(std::size_t b) { return sums_.data() + b * q_; }
    void set_count(std::size_t b, std::size_t n) { counts_[b] = n; }

    std::size_t total_count() const
    {
        std::size_t n = 0;
        for (auto c : counts_)
            n += c;
        return n;
    }

    std::vector<double> totals() const
    {
        std::vector<double> t(q_, 0.0);
        for (std::size_t b = 0; b < blocks(); ++b)
            for (std::size_t k = 0; k < q_; ++k)
                t[k] += sums_[b * q_ + k];
        return t;
    }

    std::vector<double> means() const
    {
        auto t = totals();
        double n = static_cast<double>(total_count());
        for (auto &v : t)
            v /= n;
        return t;
    }

    // f(means) with a leave-one-block-out jackknife standard error.
    template <typename F>
    Estimate jackknife(F &&f) const
    {
        Estimate e;
        e.trials = total_count();
        auto tot = totals();
        std::vector<double> m(q_);
        for (std::size_t k = 0; k < q_; ++k)
            m[k] = tot[k] / static_cast<double>(e.trials);
        e.value = f(m);
        std::size_t nb = blocks();
        if (nb < 2)
        {
            e.std_error = std::numeric_limits<double>::infinity();
            return e;
        }
        std::vector<double> theta(nb);
        double mean_theta = 0.0;
        for (std::size_t b = 0; b < nb; ++b)
        {
            double n = static_cast<double>(e.trials - counts_[b]);
            for (std::size_t k = 0; k < q_; ++k)
                m[k] = (tot[k] - sums_[b * q_ + k]) / n;
            theta[b] = f(m);
            mean_theta += theta[b];
        }
        mean_theta /= static_cast<double>(nb);
        double ss = 0.0;
        for (double t : theta)
            ss += (t - mean_theta) * (t - mean_theta);
        e.std_error = std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
        return e;
    }

  private:
    std::size_t q_;
    std::vector<double> sums_;
    std::vector<std::size_t> counts_;
};

} // namespace mimo
