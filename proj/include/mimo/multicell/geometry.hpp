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

#include "mimo/error.hpp"

namespace mimo {

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

// Shortest distance on a square torus of side `world`.
inline double wrap_distance(Point2 a, Point2 b, double world)
{
    require(world > 0.0, "world size must be positive");
    for (Point2 p : {a, b})
        require(p.x >= 0.0 && p.x <= world && p.y >= 0.0 && p.y <= world, "point lies outside the world square");
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    dx = std::min(dx, world - dx);
    dy = std::min(dy, world - dy);
    return std::hypot(dx, dy);
}

} // namespace mimo
