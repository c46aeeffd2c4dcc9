#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stab {

// Execution mode for the data-parallel kernels.  Every parallel kernel has a
// serial twin with identical results; tests compare them and the benchmark
// times them against each other.
enum class ExecMode { Serial, Parallel };

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Parallel map over [0, n); body must be safe to run concurrently and write
// only to its own index slots.
template <class Body>
void for_each_index(ExecMode mode, std::ptrdiff_t n, const Body& body) {
    if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

} // namespace stab
