#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace sc {

// Philox-4x32-10 counter-based generator. Stateless: every 128-bit block is a
// pure function of (counter, key), which is what makes path generation
// order-independent across threads.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// 53-bit uniform in [0, 1) from two 32-bit words.
inline double uniform_from_u32(std::uint32_t a, std::uint32_t b) {
  const double hi = static_cast<double>(a >> 5);   // 27 bits
  const double lo = static_cast<double>(b >> 6);   // 26 bits
  return (hi * 67108864.0 + lo) * (1.0 / 9007199254740992.0);
}

// Draw coordinates: (seed; path, stream, step, draw) -> one block.
// stream enumerates driver sources (Wiener components first, then martingales).
struct CounterRng {
  std::uint64_t seed;

  std::array<std::uint32_t, 4> raw(std::uint64_t path, std::uint32_t stream, std::uint32_t step,
                                   std::uint32_t draw) const {
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const std::array<std::uint32_t, 4> ctr = {step, draw, stream,
                                              static_cast<std::uint32_t>(path)};
    return Philox4x32::block(ctr, key);
  }

  // Uniform in (0, 1].
  double uniform_pos(std::uint64_t path, std::uint32_t stream, std::uint32_t step,
                     std::uint32_t draw) const {
    const auto b = raw(path, stream, step, draw);
    return 1.0 - uniform_from_u32(b[0], b[1]);
  }

  // Standard normal via Box-Muller; one block per draw.
  double normal(std::uint64_t path, std::uint32_t stream, std::uint32_t step,
                std::uint32_t draw = 0) const {
    const auto b = raw(path, stream, step, draw);
    const double u1 = 1.0 - uniform_from_u32(b[0], b[1]);  // (0, 1]
    const double u2 = uniform_from_u32(b[2], b[3]);        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Poisson count by uniform products; uses draws 0,1,2,... of the given step.
  std::uint32_t poisson(double mean, std::uint64_t path, std::uint32_t stream,
                        std::uint32_t step) const {
    const double limit = std::exp(-mean);
    double p = 1.0;
    std::uint32_t k = 0;
    for (std::uint32_t draw = 0; draw < 100000; ++draw) {
      p *= uniform_pos(path, stream, step, draw);
      if (p <= limit) return k;
      ++k;
    }
    return k;  // unreachable for the bounded intensities used here
  }
};

// SplitMix64; used to derive sub-seeds (pilot runs, sweep rows) from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

}  // namespace sc
