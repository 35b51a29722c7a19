// Copyright 2026 The ugame Authors
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

#ifndef UGAME_PARALLEL_H
#define UGAME_PARALLEL_H

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace ugame {

/// Worker count for library sweeps. A positive request is used as is, capped
/// by UGAME_THREADS when that variable is set; zero or negative means
/// hardware concurrency under the same cap.
int resolve_workers(int requested);

/// Splits [0, count) into at most `workers` contiguous chunks, runs
/// `fn(begin, end)` for each on its own thread and returns the chunk results in
/// chunk order. Exceptions from workers are rethrown on the caller.
template <typename Fn>
auto parallel_map_ranges(int count, int workers, Fn fn) -> std::vector<decltype(fn(0, 0))> {
    using Result = decltype(fn(0, 0));
    int chunks = std::clamp(resolve_workers(workers), 1, std::max(count, 1));
    std::vector<Result> results(static_cast<std::size_t>(chunks));
    if (chunks == 1) {
        results[0] = fn(0, count);
        return results;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; c++) {
        int begin = static_cast<int>(static_cast<long long>(count) * c / chunks);
        int end = static_cast<int>(static_cast<long long>(count) * (c + 1) / chunks);
        threads.emplace_back([&, c, begin, end] {
            try {
                results[static_cast<std::size_t>(c)] = fn(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(c)] = std::current_exception();
            }
        });
    }
    for (std::thread &t : threads) {
        t.join();
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

}  // namespace ugame

#endif
