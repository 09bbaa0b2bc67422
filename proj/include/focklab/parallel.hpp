#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace focklab {

// Index-parallel map over [0, n). Each index writes only its own slot, so
// results are deterministic regardless of scheduling; any reduction happens
// sequentially at the call site.
template <class F>
void parallel_for(std::size_t n, F&& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n < 16) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    unsigned workers = std::min<std::size_t>(hw, n);
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        }));
    }
    for (auto& f : futs) f.get();
}

} // namespace focklab
