#ifndef ERGOLAB_PARALLEL_HPP
#define ERGOLAB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ergolab {

/// Worker cap: ERGOLAB_THREADS when set, hardware concurrency otherwise.
inline int max_threads() {
    if (const char* env = std::getenv("ERGOLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Static split of [0, count) across workers. Each index is processed by
/// exactly one worker; callers write results into per-index slots so the
/// reduction order stays deterministic regardless of thread count.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::min(max_threads(), count < 1 ? 1 : count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, w, workers, count]() {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ergolab

#endif
