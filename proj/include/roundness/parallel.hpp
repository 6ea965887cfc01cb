#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace roundness {

/// Runs body(worker, stride) on `workers` threads; worker w handles the
/// indices w, w + stride, ... of whatever it iterates. Results must be
/// combined by the caller in worker order. The first exception is rethrown.
template <class Body>
void run_strided(unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(0u, 1u);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace roundness
