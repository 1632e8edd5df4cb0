#include "drift/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace drift {

void parallel_for(long n, int workers, const std::function<void(long)>& body) {
    if (n <= 0) return;
    const long w = std::clamp<long>(workers, 1, std::min<long>(n, 256));
    if (w == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (long t = 0; t < w; ++t) {
        threads.emplace_back([&, t] {
            for (long i = t; i < n; i += w) body(i);
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace drift
