#pragma once

// Data-parallel reduction over an index range. Each OpenMP thread folds a
// private accumulator; accumulators are merged under a critical section.
// Exact rational addition is associative and commutative, so the merged
// result is identical to the serial fold whatever the schedule.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wcount {

inline int effective_workers(int requested)
{
#if defined(_OPENMP)
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

template <class Acc, class Body, class Merge>
Acc parallel_accumulate(std::uint64_t count, int workers, Acc init, Body body, Merge merge)
{
    const int threads = effective_workers(workers);
    if (threads <= 1 || count < 2) {
        Acc acc = init;
        for (std::uint64_t i = 0; i < count; ++i) {
            body(i, acc);
        }
        return acc;
    }

    Acc result = init;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto n = static_cast<std::int64_t>(count);

#if defined(_OPENMP)
#pragma omp parallel num_threads(threads)
#endif
    {
        Acc local = init;
#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            if (failed.load(std::memory_order_relaxed)) {
                continue;
            }
            try {
                body(static_cast<std::uint64_t>(i), local);
            } catch (...) {
#if defined(_OPENMP)
#pragma omp critical(wcount_failure)
#endif
                {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
#if defined(_OPENMP)
#pragma omp critical(wcount_merge)
#endif
        merge(result, local);
    }

    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

}  // namespace wcount
