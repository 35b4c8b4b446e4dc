#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bcs {

// Serial reference loop; the parallel version must produce identical results
// because every task writes only to its own output slot.
template <class F>
void serial_for(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

// Global switch used by benchmarks and determinism tests to force the
// serial reference path.
inline bool& parallel_enabled() {
    static bool enabled = true;
    return enabled;
}

// OpenMP map over [0, n) with dynamic scheduling.  Exceptions thrown by tasks
// are captured and the first one is rethrown after the loop completes.
template <class F>
void parallel_for(std::size_t n, F&& f) {
#ifdef _OPENMP
    if (!parallel_enabled()) {
        serial_for(n, f);
        return;
    }
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    serial_for(n, f);
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace bcs
