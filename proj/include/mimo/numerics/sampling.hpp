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

#include "mimo/numerics/covariance.hpp"
#include "mimo/numerics/rng.hpp"

namespace mimo {

// h ~ CN(0, R) as F w with F the Hermitian square root of R.
inline CVector sample_cn(const CovarianceMatrix &r, RngStream &rng)
{
    CVector w(r.size());
    rng.fill_complex_normal(w);
    return r.sqrt_factor() * w;
}

// `count` independent draws as columns.
inline CDense sample_cn_block(const CovarianceMatrix &r, RngStream &rng, Index count)
{
    CDense w(r.size(), count);
    rng.fill_complex_normal(w);
    return r.sqrt_factor().apply(w);
}

} // namespace mimo
