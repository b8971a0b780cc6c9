#pragma once

#include <cstdint>

namespace cfn {

// Counter-based generator: output i of stream s is a fixed mixing of
// (seed, s, i), so streams can be evaluated independently and results are
// identical across platforms and thread schedules.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(mix(mix(seed + 0x7F4A7C15) ^ (stream * 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t next_u64() { return mix(base_ ^ counter_++); }

  // uniform in [0, 1)
  double next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double a, double b) {
    return a + (b - a) * next_double();
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace cfn
