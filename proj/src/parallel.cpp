#include "emlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace emlab {

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("EMLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v < 1024 && v < hw) hw = static_cast<int>(v);
    }
    return hw;
}

std::size_t chunk_count(std::int64_t n, std::int64_t chunk) {
    if (n <= 0) return 0;
    return static_cast<std::size_t>((n + chunk - 1) / chunk);
}

void for_each_chunk(std::int64_t n, std::int64_t chunk,
                    const std::function<void(std::size_t, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    const std::size_t nchunks = chunk_count(n, chunk);
    const int workers = max_threads();
    auto run_range = [&](std::size_t c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk;
        const std::int64_t end = begin + chunk < n ? begin + chunk : n;
        fn(c, begin, end);
    };
    if (workers == 1 || nchunks == 1) {
        for (std::size_t c = 0; c < nchunks; ++c) run_range(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            run_range(c);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = workers < static_cast<int>(nchunks) ? workers : static_cast<int>(nchunks);
    pool.reserve(static_cast<std::size_t>(spawn - 1));
    for (int t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace emlab
