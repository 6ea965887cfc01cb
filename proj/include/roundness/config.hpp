#pragma once

#include <cstdint>

namespace roundness {

/// Knobs shared by every exponent search.
struct ScanConfig {
  double tol = 1e-9;     // bisection width and relative deficit tolerance
  double qmax = 64.0;    // exponents above this are reported as infinite
  int grid = 256;        // scan cells per unit exponent
};

struct RunConfig {
  ScanConfig scan;
  std::size_t ball_cap = 20000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool timing = true;    // false zeroes elapsed_ms in reports
};

unsigned resolve_threads(unsigned requested);

}  // namespace roundness
