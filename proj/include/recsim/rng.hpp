#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace recsim {

// Splittable counter-based generator built on the SplitMix64 output function
// (Steele/Lea/Flood 2014, public domain). A stream is a 64-bit key; draw i of
// stream k is mix64(k + (i+1)*GAMMA). Streams for (seed, index) pairs are
// derived by hashing, so trajectories are reproducible bit-for-bit across
// platforms and the sample order never depends on buffering.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key), counter_(0) {}

  // Substream for step/sample `index` of `seed`, with a domain tag so the
  // per-step streams of a simulation never collide with e.g. Monte-Carlo
  // sample streams of the same seed.
  enum class Domain : std::uint64_t { kStep = 1, kDrift = 2, kInit = 3, kGeneric = 4 };

  static Rng substream(std::uint64_t seed, std::uint64_t index, Domain domain) {
    std::uint64_t k = mix64(seed + kGamma * static_cast<std::uint64_t>(domain));
    k = mix64(k ^ (index + kGamma));
    return Rng(k);
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal, Box-Muller; always consumes exactly two uniforms.
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    // Guard the log against u1 == 0.
    u1 = u1 > 0x1.0p-62 ? u1 : 0x1.0p-62;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Index into a probability vector by inverse CDF; consumes one uniform.
  int next_categorical(const Eigen::VectorXd& probs) {
    const double u = next_double();
    double acc = 0.0;
    for (int k = 0; k < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) return k;
    }
    return static_cast<int>(probs.size()) - 1;
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace recsim
