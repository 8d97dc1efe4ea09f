#include "fsrs/threading.hpp"

#include <cstdlib>
#include <string>

namespace fsrs {

std::size_t resolve_thread_count(int requested) {
    if (requested > 0) return static_cast<std::size_t>(requested);
    if (const char* env = std::getenv("FSRS_THREADS")) {
        try {
            long n = std::stol(env);
            if (n > 0) return static_cast<std::size_t>(n);
        } catch (...) {
            // fall through to hardware default on unparsable values
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_chunks(std::size_t n, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        body(0, n);
        return;
    }
    if (workers > n) workers = n;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = n / workers;
    const std::size_t rem = n % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < rem ? 1 : 0);
        pool.emplace_back(body, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace fsrs
