#pragma once

namespace icstab {

// Every parallel kernel keeps a serial reference path. Both paths produce
// bit-identical results; the serial one exists for tests and benchmarks.
enum class Execution { Serial, Parallel };

// Caps the OpenMP team size from ICSTAB_THREADS when it holds a positive
// integer. Returns the resulting maximum thread count.
int apply_thread_cap_from_env();

int max_threads();

}  // namespace icstab
