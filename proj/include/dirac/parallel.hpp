#ifndef DIRAC_PARALLEL_HPP
#define DIRAC_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <type_traits>
#include <vector>

namespace dirac::par {

// Global switch between the OpenMP kernels and the serial reference path.
// Tests run both and require bit-identical results; the benchmark times them.
bool parallel_enabled();
void set_parallel(bool on);
int  max_threads();

namespace detail {
void run_indexed_omp(std::size_t n, void* ctx, void (*fn)(void*, std::size_t));
}

// Serial reference implementation.
template <class F>
void for_each_index_serial(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

// OpenMP kernel: independent iterations, any order.  Writers must target
// disjoint slots so that the parallel result is bitwise equal to the serial
// one.  Exceptions are captured inside the region and rethrown afterwards.
template <class F>
void for_each_index_parallel(std::size_t n, F&& f) {
    std::exception_ptr err;
    std::mutex err_mutex;
    auto guarded = [&](std::size_t i) {
        try {
            f(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!err) err = std::current_exception();
        }
    };
    using Fn = decltype(guarded);
    detail::run_indexed_omp(n, &guarded, [](void* ctx, std::size_t i) {
        (*static_cast<Fn*>(ctx))(i);
    });
    if (err) std::rethrow_exception(err);
}

template <class F>
void for_each_index(std::size_t n, F&& f) {
    if (parallel_enabled())
        for_each_index_parallel(n, f);
    else
        for_each_index_serial(n, f);
}

// Fill out[i] = f(i).  Deterministic regardless of scheduling.
template <class T, class F>
std::vector<T> map_indexed(std::size_t n, F&& f) {
    std::vector<T> out(n);
    for_each_index(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

// Sum of f(i), i = 0..n-1.  The terms are materialized and reduced in index
// order so the parallel and serial paths give the same floating-point result.
template <class F>
double sum_indexed(std::size_t n, F&& f) {
    std::vector<double> terms = map_indexed<double>(n, f);
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

} // namespace dirac::par

#endif
