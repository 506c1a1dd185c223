#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace hdsign {

// Identifies one logical random stream. Replication r of a simulation cell
// draws from {seed, r}; equal ids reproduce equal draws no matter which
// thread or in which order the replication runs.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// xoshiro256++ engine keyed by (seed, stream_id, substream). Distinct keys
// give statistically independent streams; the generator is self-contained so
// draws do not depend on the standard library's distribution implementations.
class RandomEngine {
 public:
  explicit RandomEngine(RngStream id, std::uint64_t substream = 0) {
    std::uint64_t x = id.seed;
    detail::splitmix64(x);
    x ^= id.stream_id;
    detail::splitmix64(x);
    x ^= substream;
    for (auto& word : state_) word = detail::splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Exponential with unit rate.
  double exponential() { return -std::log1p(-uniform01()); }

  // Chi-squared with integer degrees of freedom.
  double chi_squared(int dof) {
    double sum = 0.0;
    for (int k = 0; k + 1 < dof; k += 2) sum += 2.0 * exponential();
    if (dof % 2 == 1) {
      const double z = normal();
      sum += z * z;
    }
    return sum;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hdsign
