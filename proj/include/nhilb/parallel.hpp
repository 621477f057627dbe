#pragma once

// Thin OpenMP wrapper: runs body(i) for i in [0, count) and rethrows the
// exception from the lowest failing index after the loop joins.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nhilb {

template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Sets the OpenMP thread count; values <= 0 leave the runtime default.
inline void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

}  // namespace nhilb
