#include "icstab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace icstab {

int apply_thread_cap_from_env() {
  if (const char* env = std::getenv("ICSTAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // non-numeric values leave the OpenMP default in place
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace icstab
