#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "txreach/geom.hpp"

namespace txreach {

/// SplitMix64: output k is mix(seed + (k+1) * 0x9E3779B97F4A7C15).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  std::uint64_t state_;
};

enum class Distribution { uniform, clustered, bounded_psi, thick_adversarial };

struct GeneratorSpec {
  Distribution distribution = Distribution::uniform;
  double psi = 4.0;  // radius ratio for bounded_psi
};

/// "uniform", "clustered", "bounded-psi" (optionally "bounded-psi:8"),
/// "thick-adversarial". Throws std::invalid_argument otherwise.
GeneratorSpec parse_distribution(std::string_view name);
std::string distribution_name(const GeneratorSpec& spec);

/// Ticks per unit: generated values have three decimal digits.
inline constexpr int kGeneratorExponent = 3;

/// Deterministic per (n, distribution, seed). Points lie on an integer tick lattice
/// with distinct positions; radii are in [1, psi] units for bounded_psi.
TransmissionInstance generate(std::size_t n, const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace txreach
