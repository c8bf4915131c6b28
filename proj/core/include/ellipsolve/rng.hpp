#pragma once

// Seeded draws for parameter sweeps. The uniform map is written out rather
// than taken from <random>'s distributions so that sequences agree across
// standard library implementations.

#include <cstdint>
#include <random>
#include <string_view>

namespace ellipsolve {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // a + (b - a) * U, U uniform on [0, 1) with 53 random bits.
  double uniform(double a, double b) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace ellipsolve
