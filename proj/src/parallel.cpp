#include "mapgen/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mapgen {

namespace {
int g_max_threads = 1;
}

int max_threads() { return g_max_threads; }

void set_max_threads(int n) {
    if (n <= 0) {
#ifdef _OPENMP
        g_max_threads = omp_get_max_threads();
#else
        g_max_threads = 1;
#endif
    } else {
        g_max_threads = n;
    }
}

}  // namespace mapgen
