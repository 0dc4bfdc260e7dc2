#pragma once

#include <cmath>
#include <cstdint>

namespace ldsim {

/// Deterministic random stream based on the SplitMix64 generator
/// (Steele, Lea, Flood 2014). The entire state is one 64-bit counter,
/// so identical seeds give identical draws on every platform and the
/// stream for run k of a batch can be derived without consuming the
/// parent stream.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  /// Independent child stream for a numbered sub-task (one per Monte
  /// Carlo run, one per noise channel). Children with different indices
  /// never overlap because each draws from its own counter sequence.
  RandomStream fork(std::uint64_t index) const {
    RandomStream child(state_ + 0x9e3779b97f4a7c15ULL * (index + 1));
    child.next_u64();
    return child;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller. Draws two uniforms per call; the
  /// second variate is discarded to keep the call sequence stateless.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    // Guard the log against an exact zero draw.
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
  std::uint64_t state_;
};

}  // namespace ldsim
