#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ehba {

// 64-bit FNV-1a, used to derive stream seeds from names.
constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// A named substream of a master seed. Streams with distinct names are
// statistically independent; the same (master, name) always yields the
// same sequence, which is what makes paired plain/wrapped comparisons and
// byte-identical reruns possible.
class RngStream {
 public:
  RngStream(std::uint64_t master, std::string_view name)
      : engine_(splitmix64(master ^ fnv1a64(name))) {}

  explicit RngStream(std::uint64_t raw_seed) : engine_(raw_seed) {}

  std::mt19937_64& engine() { return engine_; }

  // Uniform double in [0, 1). Hand-rolled so sequences do not depend on the
  // standard library's distribution implementations.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int next_below(int n) {
    auto v = static_cast<int>(next_unit() * n);
    return v >= n ? n - 1 : v;
  }

  double next_gaussian() {
    // Marsaglia polar method; consumes a variable number of draws but is
    // deterministic given the stream state.
    for (;;) {
      double u = 2.0 * next_unit() - 1.0;
      double v = 2.0 * next_unit() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        return u * std::sqrt(-2.0 * std::log(s) / s);
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ehba
