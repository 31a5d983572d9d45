// Copyright (C) 2026 The risho authors
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
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace risho {

/// Runs task(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order. Results do not depend on the worker count as long
/// as each task is a pure function of its index.
template <class Task>
auto run_indexed(std::size_t count, unsigned workers, Task task) -> std::vector<decltype(task(std::size_t{}))> {
    using R = decltype(task(std::size_t{}));
    std::vector<R> results(count);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = task(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const auto n = std::min<std::size_t>(workers, count);
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

inline unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

} // namespace risho
