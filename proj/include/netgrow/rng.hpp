#pragma once

#include <cstdint>
#include <random>

namespace netgrow {

// Seedable 64-bit generator with sampling helpers that bypass the standard
// library's distribution objects, so a given seed yields the same stream on
// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [0, n). Rejection keeps the draw exactly uniform.
  std::int64_t below(std::int64_t n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  static constexpr const char* id() { return "mt19937_64"; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace netgrow
