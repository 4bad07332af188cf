#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qcat {

// Thread-count cap: min(hardware, QCAT_THREADS if set).
inline int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("QCAT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < hw) hw = cap;
  }
  return hw;
}

// Index-parallel loop; results must be written to index-addressed slots so
// the outcome is independent of scheduling.  Exceptions are captured and the
// first one (by index) is rethrown.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  const int nthreads = std::min(max_threads(), n);
  if (nthreads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qcat
