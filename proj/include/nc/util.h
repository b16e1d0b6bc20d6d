// nc/util.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef NC_UTIL_H_
#define NC_UTIL_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>

namespace nc {

// Seeded RNG with platform-independent draws. mt19937_64 output is pinned by
// the standard; the scaling below avoids std::uniform_real_distribution,
// whose rounding is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  /// Uniform double in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform integer in [lo, hi], inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(engine_() % span);
  }

  uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Runs fn(0..n-1) over `workers` threads in contiguous index chunks; with
// one worker this is a plain loop. Callers write to disjoint slots, so the
// outcome is independent of the worker count.
void parallel_for(size_t n, int32_t workers,
                  const std::function<void(size_t)>& fn);

/// Seconds on the monotonic clock.
inline double monotonic_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace nc

#endif  // NC_UTIL_H_
