#pragma once

#include <cmath>
#include <cstdint>

namespace haudim {

// Counter-based generator: output i is a pure function of (key, i), so
// disjoint index ranges can be filled in any order, on any number of
// threads, and still produce identical streams.
namespace rng_detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace rng_detail

// SplitMix64 evaluated at an arbitrary counter position.
inline std::uint64_t counter_u64(std::uint64_t key, std::uint64_t counter) {
  return rng_detail::mix64(key + (counter + 1) * rng_detail::kGolden);
}

// Stable seed derivation: documented as mix(mix(master) ^ stream-position).
// Distinct stream ids give decorrelated substreams; the map never changes
// between runs or versions.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return rng_detail::mix64(rng_detail::mix64(master_seed + rng_detail::kGolden) ^
                           (stream_id * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t start = 0) : key_(key), ctr_(start) {}

  std::uint64_t next_u64() { return counter_u64(key_, ctr_++); }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double next_exp() { return -std::log(next_unit()); }

  // One Box-Muller draw; consumes exactly two counter slots.
  double next_normal() {
    const double u = next_unit();
    const double v = next_unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
  }

  std::uint64_t position() const { return ctr_; }
  void seek(std::uint64_t counter) { ctr_ = counter; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace haudim
