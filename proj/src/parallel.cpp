#include "qlspb/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlspb {

int thread_cap() {
    static const int cap = [] {
#ifdef _OPENMP
        int n = omp_get_max_threads();
#else
        int n = 1;
#endif
        if (const char* env = std::getenv("QLSPB_THREADS")) {
            int requested = std::atoi(env);
            if (requested >= 1 && requested < n) n = requested;
        }
        return n;
    }();
    return cap;
}

ExecMode default_mode() {
    return thread_cap() > 1 ? ExecMode::parallel : ExecMode::serial;
}

void for_each_index(std::size_t count, ExecMode mode,
                    const std::function<void(std::size_t)>& fn) {
    if (mode == ExecMode::parallel) {
#ifdef _OPENMP
        const int threads = thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
#endif
    }
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace qlspb
