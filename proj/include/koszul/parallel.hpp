#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace koszul {

// Row loops below this size are not worth forking threads for.
inline constexpr std::int64_t kParGrain = 24;

template <class Fn>
void par_for(std::int64_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kParGrain)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#else
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace koszul
