#include "holosort/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>

namespace holosort {

std::string fnv1a_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string(buf);
}

unsigned effective_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HOLOSORT_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = effective_threads();
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = n * w / workers;
        std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace holosort
