#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

/// Apply fn(i) for i in [0, n) across `workers` threads. Each index is
/// processed exactly once; results must be written to disjoint slots so the
/// outcome is independent of the partitioning. Reductions happen afterwards
/// in index order, which keeps floating-point output bit-identical for any
/// worker count.
inline void parallel_for_index(size_t n, int workers, const std::function<void(size_t)>& fn) {
    if (workers < 1) throw DomainError("worker count must be >= 1");
    if (workers == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t nthreads = std::min<size_t>(static_cast<size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t w = 0; w < nthreads; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// Compensated (Kahan) accumulator; used everywhere a deterministic
/// fixed-order reduction feeds doubles.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace hecke
