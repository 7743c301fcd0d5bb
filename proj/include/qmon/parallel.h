// Copyright 2026 The qmon Authors
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

#ifndef QMON_PARALLEL_H
#define QMON_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qmon {

/// Thread count used when a caller passes 0. Defaults to 1.
size_t default_threads();
void set_default_threads(size_t threads);

/// Calls `body(i)` for every i in [0, count), spread over `threads` workers.
///
/// Work is handed out by an atomic counter. Callers write results into
/// per-index slots and reduce afterwards in index order, which keeps output
/// independent of the thread count. The first exception thrown by `body` is
/// rethrown on the calling thread.
template <typename Body>
void parallel_for(size_t count, size_t threads, Body &&body) {
    if (threads == 0) {
        threads = default_threads();
    }
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    threads = std::min(threads, count);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (size_t t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace qmon

#endif
