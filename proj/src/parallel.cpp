#include "bgax/parallel.hpp"

#include <omp.h>

namespace bgax
{

int resolve_workers(int requested)
{
    if (requested >= 1)
        return requested;
    return omp_get_max_threads() > 0 ? omp_get_max_threads() : 1;
}

} // namespace bgax
