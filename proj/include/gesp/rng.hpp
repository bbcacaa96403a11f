#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace gesp {

/// One SplitMix64 step (Steele, Lea & Flood) from state x: add the golden-ratio
/// increment, then apply the bijective finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for one Monte Carlo trial, a pure function of its coordinates.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t ratio_index,
                          std::uint64_t trial_index);

/// Seeded random stream. The engine is mt19937_64, whose output sequence is
/// fixed by the standard; the distributions below are written out by hand
/// because the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound), unbiased. bound > 0.
  std::size_t below(std::size_t bound);

  /// N(0, 1) via Box-Muller.
  double normal();

  /// Uniform phase on [0, 2 pi).
  double phase();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gesp
