#pragma once

// Deterministic chunked work driver. The iteration space is split into
// fixed-size chunks whose geometry does not depend on the worker count, so
// per-chunk partial results (indexed by chunk id) combine to identical
// answers on 1 thread or 16. EMLAB_THREADS caps the worker pool.

#include <cstdint>
#include <functional>

namespace emlab {

// min(hardware_concurrency, EMLAB_THREADS); at least 1.
int max_threads();

std::size_t chunk_count(std::int64_t n, std::int64_t chunk);

// Runs fn(chunk_index, begin, end) over [0, n) in chunks of size `chunk`.
// fn must only write state owned by its chunk_index (or thread-local
// scratch); chunks are claimed dynamically but their extents are fixed.
void for_each_chunk(std::int64_t n, std::int64_t chunk,
                    const std::function<void(std::size_t, std::int64_t, std::int64_t)>& fn);

}  // namespace emlab
