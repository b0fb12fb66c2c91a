#include "txreach/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace txreach {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: empty range");
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

double SplitMix64::normal() {
  const double u = 1.0 - unit();  // (0, 1]
  const double v = unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

GeneratorSpec parse_distribution(std::string_view name) {
  GeneratorSpec s;
  if (name == "uniform") {
    s.distribution = Distribution::uniform;
  } else if (name == "clustered") {
    s.distribution = Distribution::clustered;
  } else if (name == "thick-adversarial") {
    s.distribution = Distribution::thick_adversarial;
  } else if (name.starts_with("bounded-psi")) {
    s.distribution = Distribution::bounded_psi;
    const auto rest = name.substr(std::string_view("bounded-psi").size());
    if (!rest.empty()) {
      if (rest[0] != ':') throw std::invalid_argument("unknown distribution: " + std::string(name));
      std::size_t used = 0;
      const std::string num(rest.substr(1));
      try {
        s.psi = std::stod(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != num.size() || !(s.psi >= 1.0) || !std::isfinite(s.psi)) {
        throw std::invalid_argument("bounded-psi needs a ratio >= 1");
      }
    }
  } else {
    throw std::invalid_argument("unknown distribution: " + std::string(name));
  }
  return s;
}

std::string distribution_name(const GeneratorSpec& spec) {
  switch (spec.distribution) {
    case Distribution::uniform: return "uniform";
    case Distribution::clustered: return "clustered";
    case Distribution::bounded_psi: {
      std::string v = std::to_string(spec.psi);
      v.erase(v.find_last_not_of('0') + 1);
      if (v.back() == '.') v.pop_back();
      return "bounded-psi:" + v;
    }
    case Distribution::thick_adversarial: return "thick-adversarial";
  }
  return "?";
}

namespace {

constexpr double kTicks = 1000.0;

struct Lattice {
  std::unordered_set<std::uint64_t> used;
  std::int64_t side;  // ticks

  bool claim(std::int64_t x, std::int64_t y) {
    return used.insert(static_cast<std::uint64_t>(x) * 0x100000000ULL + static_cast<std::uint64_t>(y)).second;
  }
};

std::int64_t clamp_tick(double v, std::int64_t side) {
  return std::clamp<std::int64_t>(std::llround(v), 0, side - 1);
}

// Side (in units) of the square giving about `degree` expected in-neighbours.
double side_units(std::size_t n, double mean_r_sq, double degree) {
  return std::max(4.0, std::sqrt(static_cast<double>(n) * std::numbers::pi * mean_r_sq / degree));
}

}  // namespace

TransmissionInstance generate(std::size_t n, const GeneratorSpec& spec, std::uint64_t seed) {
  if (!(spec.psi >= 1.0)) throw std::invalid_argument("generate: psi must be >= 1");
  SplitMix64 rng(seed);
  std::vector<TransmissionInstance::Raw> raw;
  raw.reserve(n);

  double r_lo = 1.0, r_hi = 4.0;
  bool log_radius = false;
  double mean_r_sq = (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo) / (3.0 * (r_hi - r_lo));
  double degree = 6.0;
  switch (spec.distribution) {
    case Distribution::uniform:
    case Distribution::clustered:
      break;
    case Distribution::bounded_psi:
      r_hi = spec.psi;
      log_radius = true;
      mean_r_sq = spec.psi == 1.0 ? 1.0 : (spec.psi * spec.psi - 1.0) / (2.0 * std::log(spec.psi));
      break;
    case Distribution::thick_adversarial:
      // Wide radius range over a small square: many disks share a point.
      r_hi = std::max(8.0, std::sqrt(static_cast<double>(n)));
      log_radius = true;
      mean_r_sq = 1.0;
      degree = 0.5;
      break;
  }
  Lattice lat;
  const double side = side_units(n, mean_r_sq, degree);
  lat.side = std::max<std::int64_t>(static_cast<std::int64_t>(side * kTicks),
                                    static_cast<std::int64_t>(std::sqrt(2.0 * static_cast<double>(n))) + 1);

  std::vector<std::pair<double, double>> centres;
  if (spec.distribution == Distribution::clustered) {
    const std::size_t k = std::max<std::size_t>(1, n / 200);
    for (std::size_t i = 0; i < k; ++i) {
      centres.emplace_back(rng.unit() * static_cast<double>(lat.side), rng.unit() * static_cast<double>(lat.side));
    }
  }
  const double spread = static_cast<double>(lat.side) / std::sqrt(static_cast<double>(std::max<std::size_t>(1, centres.size()))) / 6.0;

  auto radius = [&]() {
    const double u = rng.unit();
    const double r = log_radius ? r_lo * std::pow(r_hi / r_lo, u) : r_lo + (r_hi - r_lo) * u;
    return std::clamp(std::round(r * kTicks), r_lo * kTicks, r_hi * kTicks);
  };

  while (raw.size() < n) {
    std::int64_t x, y;
    if (!centres.empty()) {
      const auto& c = centres[rng.below(centres.size())];
      x = clamp_tick(c.first + spread * rng.normal(), lat.side);
      y = clamp_tick(c.second + spread * rng.normal(), lat.side);
    } else {
      x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(lat.side)));
      y = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(lat.side)));
    }
    const double r = radius();
    if (!lat.claim(x, y)) continue;  // occupied tick: draw again
    raw.push_back({static_cast<double>(x), static_cast<double>(y), r});
  }
  if (spec.distribution == Distribution::bounded_psi && n >= 2) {
    // Pin the extremes so the realised ratio is exactly psi.
    raw[0].r = std::round(r_lo * kTicks);
    raw[1].r = std::round(r_hi * kTicks);
  }
  return TransmissionInstance(raw, kGeneratorExponent);
}

}  // namespace txreach
