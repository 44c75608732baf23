#pragma once

namespace lfi {

/// Threads used by the OpenMP kernels. Values < 1 restore the runtime default.
void set_thread_count(int threads);
int thread_count();

/// True when the library was compiled with OpenMP.
bool parallel_enabled();

}  // namespace lfi
