#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fpbc {

// All randomness flows from one user seed through named substreams, so runs
// are reproducible regardless of thread count or evaluation order. The
// generator is pinned to std::mt19937_64 (bit-exact across platforms) and
// doubles are produced from raw bits, not distribution objects.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/splitmix64-substreams";

  explicit Rng(uint64_t seed)
      : seed_material_(splitmix(seed)), engine_(seed_material_) {}

  static Rng from_seed(uint64_t seed) { return Rng(seed); }

  Rng substream(std::string_view name, uint64_t index = 0) const {
    uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the stream name
    for (char c : name) h = (h ^ uint64_t(uint8_t(c))) * 0x100000001b3ull;
    return Rng(splitmix(seed_material_ ^ splitmix(h) ^ splitmix(index * 0x9e3779b97f4a7c15ull + 1)));
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  int coin_pm1() { return (next_u64() & 1) ? 1 : -1; }

  uint64_t below(uint64_t n) {  // unbiased via rejection
    const uint64_t limit = n * (~uint64_t(0) / n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  uint64_t seed_material_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace fpbc
