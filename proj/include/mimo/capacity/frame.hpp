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
#include <limits>

#include "mimo/error.hpp"

namespace mimo {

enum class Direction
{
    Downlink,
    Uplink
};

inline const char *to_string(Direction d) { return d == Direction::Downlink ? "DL" : "UL"; }

// Coherence period and its pilot/data split, in channel uses.
struct TddFrame
{
    int t_coher = 1000;
    int t_ul_pilot = 50;
    int t_ul_data = 450;
    int t_dl_pilot = 50;
    int t_dl_data = 450;

    void validate() const
    {
        require(t_coher >= 1, "coherence period must be at least 1");
        require(t_ul_pilot >= 0 && t_ul_data >= 0 && t_dl_pilot >= 0 && t_dl_data >= 0,
                "frame parts must be non-negative");
        require(t_ul_pilot + t_ul_data + t_dl_pilot + t_dl_data == t_coher,
                "frame parts must sum to the coherence period");
    }

    double data_fraction(Direction d) const
    {
        return static_cast<double>(d == Direction::Downlink ? t_dl_data : t_ul_data) / t_coher;
    }

    double pilot_fraction(Direction d) const
    {
        return static_cast<double>(d == Direction::Downlink ? t_dl_pilot : t_ul_pilot) / t_coher;
    }
};

struct PowerConfig
{
    double p_bs = 1.0;
    double p_ue = 1.0;

    void validate() const
    {
        require(std::isfinite(p_bs) && p_bs >= 0.0, "p_bs must be finite and non-negative");
        require(std::isfinite(p_ue) && p_ue >= 0.0, "p_ue must be finite and non-negative");
    }
};

inline constexpr double kUnboundedCapacity = std::numeric_limits<double>::infinity();

} // namespace mimo
