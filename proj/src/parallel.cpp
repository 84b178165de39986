#include "mteval/parallel.hpp"

namespace mteval {

int max_threads() {
#ifdef MTEVAL_WITH_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mteval
