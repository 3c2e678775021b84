#include "eisglm/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace eisglm {

int thread_count() {
    if (const char* env = std::getenv("EISGLM_THREADS")) {
        const int n = std::atoi(env);
        return n <= 1 ? 1 : n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long>(n) * w / workers);
        const int end =
            static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
        pool.emplace_back([begin, end, &fn] {
            for (int i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace eisglm
