#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lfmax {

unsigned default_workers();

// Splits [0, n) into fixed blocks of `block` items and evaluates f(begin, end)
// for every block on `workers` threads. The block layout does not depend on
// the worker count, so an in-order merge of the result is schedule independent.
template <class R, class F>
std::vector<R> map_blocks(std::size_t n, std::size_t block, unsigned workers, F&& f) {
    if (block == 0) block = 1;
    std::size_t nblocks = (n + block - 1) / block;
    std::vector<R> out(nblocks);
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(nblocks, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                std::size_t lo = b * block, hi = std::min(n, lo + block);
                out[b] = f(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next = nblocks;
                return;
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace lfmax
