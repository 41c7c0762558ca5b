#ifndef CSC_RNG_HPP
#define CSC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace csc {

/// Counter-based random generator: every draw is a pure function of
/// (seed, index), so matrices and simulations can be re-derived from a
/// serialized seed and realizations can run on any worker without
/// shared state. Streams split off with derive().
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t word(std::uint64_t index) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = mix(z);
    return mix(z ^ 0xbf58476d1ce4e5b9ULL);
  }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t index) const {
    return static_cast<double>(word(index) >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open(std::uint64_t index) const {
    return static_cast<double>((word(index) >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal draw, two counter words per call (Box-Muller).
  double normal(std::uint64_t index) const {
    const double u1 = uniform_open(2 * index);
    const double u2 = uniform(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t index, std::uint64_t bound) const {
    return static_cast<std::uint64_t>(uniform(index) * static_cast<double>(bound));
  }

  /// Independent child stream; derive(a).derive(b) != derive(b).derive(a).
  CounterRng derive(std::uint64_t stream) const {
    return CounterRng(mix(seed_ ^ mix(stream + 0x94d049bb133111ebULL)));
  }

  CounterRng derive(std::uint64_t a, std::uint64_t b) const {
    return derive(a).derive(b);
  }

  std::vector<double> normal_vector(std::size_t count,
                                    std::uint64_t first_index = 0) const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = normal(first_index + i);
    return out;
  }

  /// k distinct values from {0..n-1}, ascending. Partial Fisher-Yates.
  std::vector<int> sample_without_replacement(int n, int k) const;

 private:
  std::uint64_t seed_;
};

}  // namespace csc

#endif
