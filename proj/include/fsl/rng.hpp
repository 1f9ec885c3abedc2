#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fsl {

/// SplitMix64 (Steele, Lea, Flood 2014). Every random choice in the
/// library goes through this generator so that a seed reproduces a run
/// exactly, in any language that implements the same three lines:
///
///   state += 0x9e3779b97f4a7c15
///   z = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb;  return z ^ (z >> 31)
///
/// uniform(lo, hi) is `lo + next() % (hi - lo + 1)`; the modulo bias is
/// accepted in exchange for a trivially portable definition.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in the closed range [lo, hi].
  long uniform(long lo, long hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool coin() noexcept { return (next() & 1U) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& items) noexcept {
    return items[static_cast<std::size_t>(uniform(0, static_cast<long>(items.size()) - 1))];
  }

  /// Independent stream for trial `index` of a campaign seeded with `seed`.
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mixer(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace fsl
