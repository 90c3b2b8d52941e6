#ifndef C2K_PARALLEL_H
#define C2K_PARALLEL_H

#ifdef _OPENMP
#include <omp.h>
#endif

namespace c2k {

/// Every data-parallel kernel has a serial reference path; both must produce
/// identical results.
enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace c2k

#endif
