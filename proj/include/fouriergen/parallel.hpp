#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fgen {

// Runs fn(shard, begin, end) over contiguous index ranges, one thread per
// shard. Shard boundaries depend only on (n_items, n_threads), so results
// merged in shard order are reproducible for a fixed thread count.
inline void parallel_shards(std::size_t n_items, std::size_t n_threads,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n_items == 0) return;
    if (n_threads <= 1 || n_items == 1) {
        fn(0, 0, n_items);
        return;
    }
    const std::size_t shards = std::min(n_threads, n_items);
    const std::size_t chunk = (n_items + shards - 1) / shards;
    std::vector<std::thread> workers;
    workers.reserve(shards);
    std::vector<std::exception_ptr> errors(shards);
    for (std::size_t s = 0; s < shards; ++s) {
        const std::size_t begin = s * chunk;
        const std::size_t end = std::min(begin + chunk, n_items);
        if (begin >= end) break;
        workers.emplace_back([&, s, begin, end]() {
            try {
                fn(s, begin, end);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace fgen
