#include "oscnet/kernels.hpp"

#include <omp.h>

namespace oscnet {

int parallel_threads() noexcept { return omp_get_max_threads(); }

}  // namespace oscnet
