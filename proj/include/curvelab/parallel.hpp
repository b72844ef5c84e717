#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace curvelab {

// Deterministic parallel reduction. The index range is cut into fixed-size
// chunks; workers grab chunks from a shared counter and store each chunk's
// partial result in a slot indexed by chunk id. Partials are then combined
// in chunk order, so the floating-point result is independent of the thread
// count and of scheduling.
//
// `body(begin, end)` must return the chunk's partial value and be free of
// side effects visible to other chunks.
template <typename Partial, typename Body>
std::vector<Partial> chunked_map(std::size_t n, std::size_t chunk_size, unsigned threads,
                                 const Body& body) {
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Partial> partials(n_chunks);
    if (n_chunks == 0) return partials;

    auto run = [&](std::size_t c) {
        const std::size_t begin = c * chunk_size;
        const std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
        partials[c] = body(begin, end);
    };

    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run(c);
        return partials;
    }

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = cursor.fetch_add(1);
            if (c >= n_chunks) return;
            run(c);
        }
    };
    std::vector<std::thread> pool;
    const unsigned k = threads < n_chunks ? threads : static_cast<unsigned>(n_chunks);
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return partials;
}

template <typename Body>
double chunked_sum(std::size_t n, std::size_t chunk_size, unsigned threads, const Body& body) {
    const auto partials = chunked_map<double>(n, chunk_size, threads, body);
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

} // namespace curvelab
