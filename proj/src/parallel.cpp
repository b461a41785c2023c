#include "dirac/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>

namespace dirac::par {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {

void run_indexed_omp(std::size_t n, void* ctx, void (*fn)(void*, std::size_t)) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
#endif
}

} // namespace detail
} // namespace dirac::par
