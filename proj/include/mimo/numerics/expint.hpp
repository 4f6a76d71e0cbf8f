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
#include <numbers>

#include "mimo/error.hpp"

namespace mimo {

namespace detail {

// Continued-fraction tail T(x) = 1/(x+3 - 4/(x+5 - 9/(x+7 - ...))), so that
// e^x E1(x) = 1/(x + 1 - T(x)). Modified Lentz, valid for x >= 1.
inline double e1_cf_tail(double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double b = x + 3.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i)
    {
        double an = -static_cast<double>(i + 1) * static_cast<double>(i + 1);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    throw ConvergenceError("E1 continued fraction did not converge");
}

// Power series E1(x) = -gamma - ln x - sum_k (-x)^k / (k k!), for 0 < x < 1.
inline double e1_series(double x)
{
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k)
    {
        term *= -x / k;
        double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum))
            break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

inline void check_e1_argument(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("exponential integral requires finite x > 0");
}

} // namespace detail

// E1(x) = integral_1^inf e^{-tx}/t dt.
inline double expint_e1(double x)
{
    detail::check_e1_argument(x);
    if (x < 1.0)
        return detail::e1_series(x);
    if (x > 745.0)
        return 0.0;
    return std::exp(-x) / (x + 1.0 - detail::e1_cf_tail(x));
}

// e^x E1(x), evaluated without forming e^x for x >= 1.
inline double expint_e1_scaled(double x)
{
    detail::check_e1_argument(x);
    if (x < 1.0)
        return std::exp(x) * detail::e1_series(x);
    return 1.0 / (x + 1.0 - detail::e1_cf_tail(x));
}

// 1 - x e^x E1(x), free of cancellation for large x.
inline double expint_e1_complement(double x)
{
    detail::check_e1_argument(x);
    if (x < 1.0)
        return 1.0 - x * std::exp(x) * detail::e1_series(x);
    double t = detail::e1_cf_tail(x);
    return (1.0 - t) / (x + 1.0 - t);
}

// E{X/(a X + b)} for X exponential with mean r; a, b >= 0, b > 0.
inline double exponential_ratio_mean(double a, double b, double r)
{
    require(a >= 0.0 && b > 0.0 && r >= 0.0, "exponential_ratio_mean requires a >= 0, b > 0, r >= 0");
    if (r == 0.0)
        return 0.0;
    if (a == 0.0)
        return r / b;
    double x = b / (a * r);
    if (!std::isfinite(x))
        return r / b;
    return expint_e1_complement(x) / a;
}

} // namespace mimo
