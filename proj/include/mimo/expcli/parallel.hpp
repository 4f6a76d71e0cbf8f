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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mimo/numerics/monte_carlo.hpp"

namespace mimo::expcli {

// Hardware concurrency, capped by MIMO_SIM_THREADS when set to a positive integer.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("MIMO_SIM_THREADS"))
    {
        char *end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0)
            n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

// Work-sharing loop over [0, count): workers claim indices from a shared
// counter. The first exception thrown by a body is rethrown after the join.
inline ParallelFor make_parallel_for(unsigned workers)
{
    if (workers <= 1)
        return {};
    return [workers](std::size_t count, const std::function<void(std::size_t)> &body) {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            for (;;)
            {
                std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                }
            }
        };
        unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
        std::vector<std::thread> threads;
        for (unsigned k = 1; k < n; ++k)
            threads.emplace_back(work);
        work();
        for (auto &t : threads)
            t.join();
        if (error)
            std::rethrow_exception(error);
    };
}

} // namespace mimo::expcli
