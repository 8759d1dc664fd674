#ifndef PARAWEIGHT_RNG_HPP
#define PARAWEIGHT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace paraweight {

/**
 * Counter-based random generator. Every draw is a pure function of
 * (seed, stream, counter), so ensembles are reproducible independently of
 * evaluation order, thread count, or grid resolution. Keying draws by the
 * integer frequency of a Fourier mode gives the same random function at
 * every resolution that contains the mode.
 */
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent generator for out-of-sample re-draws.
  CounterRng derived(std::uint64_t salt) const {
    return CounterRng(mix(seed_ ^ mix(salt ^ 0xd1b54a32d192ed03ULL)));
  }

  std::uint64_t word(std::uint64_t stream, std::uint64_t counter) const {
    return mix(mix(mix(seed_) ^ stream) ^ counter);
  }

  /// Uniform in [0,1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(word(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller; the pair partner is discarded).
  double normal(std::uint64_t stream, std::uint64_t counter) const {
    const std::uint64_t s = mix(stream ^ 0x9e3779b97f4a7c15ULL);
    const double u1 =
        (static_cast<double>(word(s, 2 * counter) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform(s, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace paraweight

#endif
