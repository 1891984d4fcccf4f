// Copyright 2026 The stabcleanse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stabcleanse {

/// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns the
/// results indexed by i. The output does not depend on the worker count as long
/// as fn(i) depends only on i.
template <typename Fn>
auto parallel_map(size_t count, unsigned workers, Fn fn) -> std::vector<decltype(fn(size_t{}))> {
    using T = decltype(fn(size_t{}));
    std::vector<T> out(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<size_t>(count, 1))));
    if (workers == 1) {
        for (size_t i = 0; i < count; i++) {
            out[i] = fn(i);
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

}  // namespace stabcleanse
