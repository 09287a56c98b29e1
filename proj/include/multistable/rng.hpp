#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace multistable {

// SplitMix64 finalizer, used to derive independent engine seeds from a
// (user seed, stream id) pair.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream ids. Each random sequence a simulation consumes is drawn from its
// own sub-stream, so extending one sequence (e.g. more series terms) never
// shifts another, and the two series representations use disjoint randomness
// even under the same seed.
enum class Stream : std::uint64_t {
  kGamma = 0,            // exponential spacings of the arrival times
  kLocation = 1,         // uniform jump locations
  kSign = 2,             // Rademacher signs
  kPoissonGamma = 3,     // same roles, Poisson-representation route
  kPoissonLocation = 4,
  kPoissonSign = 5,
  kOracle = 6,           // stable oracle sampler
  kPredictable = 7,      // random simple-predictable integrands
};

// Deterministic random stream: fixed engine (mt19937_64) and fixed floating
// transforms, so a (seed, stream) pair reproduces bit-identical values on any
// conforming platform. uniform01() lands strictly inside (0,1), which keeps
// exponential() finite and positive and keeps uniform locations away from
// the interval endpoints.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, Stream stream)
      : engine_(splitmix64(splitmix64(seed) ^
                           (0x9E3779B97F4A7C15ull *
                            (static_cast<std::uint64_t>(stream) + 1)))) {}

  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential() { return -std::log(uniform01()); }

  double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace multistable
