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

#include <stdexcept>
#include <string>

namespace mimo {

// Invalid argument value (negative power, |r| > 1, x <= 0 in E1, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Covariance not PSD within tolerance, or a Hermitian solve failed.
struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or Monte-Carlo target not met.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string &what)
{
    if (!ok)
        throw DomainError(what);
}

inline void require_dims(bool ok, const std::string &what)
{
    if (!ok)
        throw DimensionError(what);
}

} // namespace mimo
