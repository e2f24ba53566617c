#pragma once

#include <cstdint>
#include <random>

namespace deto {

/// Seeded portable uniform generator: std::mt19937_64 (whose output sequence
/// the standard pins down bit-exactly) with an explicit 53-bit mapping to
/// [0, 1). std::uniform_real_distribution is avoided on purpose — its output
/// is implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1), 53 significant bits.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace deto
