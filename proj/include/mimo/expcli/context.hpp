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
#include <string>
#include <vector>

#include "mimo/capacity/frame.hpp"
#include "mimo/expcli/params.hpp"
#include "mimo/numerics/monte_carlo.hpp"

namespace mimo::expcli {

// Absolute slack in the convergence rule se <= rel * |value| + floor, so
// that estimates of rates that tend to zero can converge.
inline constexpr double kAbsoluteSeFloor = 1e-3;

// Per-run state handed to experiment functions.
struct RunContext
{
    std::uint64_t seed = 1;
    std::size_t trials = 10000;
    double rel_se_target = 0.01;
    ParallelFor parallel;
    std::vector<std::string> unconverged;
    std::size_t estimates = 0;

    // Stream `stream` of the run seed. Equal streams give common random numbers.
    MonteCarloConfig mc(std::uint64_t stream) const
    {
        MonteCarloConfig c;
        c.trials = trials;
        c.rng = RngStream(seed, stream);
        c.rel_se_target = rel_se_target;
        c.parallel_for = parallel;
        return c;
    }

    // Records an estimate that misses the standard-error target.
    double track(const Estimate &e, const std::string &what)
    {
        ++estimates;
        if (!e.meets(rel_se_target, kAbsoluteSeFloor))
            unconverged.push_back(what + ": " + format_number(e.value) + " +- " + format_number(e.std_error));
        return e.value;
    }
};

using Derived = std::vector<std::pair<std::string, std::string>>;

// Frame parameters shared by the capacity-type experiments.
inline void add_frame_params(Params &p)
{
    p.add("t_coher", std::int64_t{1000}, "channel uses", "coherence period")
        .add("t_ul_pilot", std::int64_t{50}, "channel uses", "UL pilot length")
        .add("t_ul_data", std::int64_t{450}, "channel uses", "UL data length")
        .add("t_dl_pilot", std::int64_t{50}, "channel uses", "DL pilot length")
        .add("t_dl_data", std::int64_t{450}, "channel uses", "DL data length");
}

inline TddFrame frame_from(const Params &p)
{
    TddFrame f;
    f.t_coher = static_cast<int>(p.integer("t_coher"));
    f.t_ul_pilot = static_cast<int>(p.integer("t_ul_pilot"));
    f.t_ul_data = static_cast<int>(p.integer("t_ul_data"));
    f.t_dl_pilot = static_cast<int>(p.integer("t_dl_pilot"));
    f.t_dl_data = static_cast<int>(p.integer("t_dl_data"));
    f.validate();
    return f;
}

inline Direction direction_from(const Params &p)
{
    return p.text("direction") == "UL" ? Direction::Uplink : Direction::Downlink;
}

} // namespace mimo::expcli
