#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "txreach/geom.hpp"

namespace txreach {

/// Malformed text input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Instance text: "n" then n lines "x y r" (plain decimals, single spaces).
/// When every value is a decimal with at most 15 fractional digits the
/// values are rescaled by the common power of ten into integers.
TransmissionInstance parse_instance(std::string_view text);
TransmissionInstance read_instance_file(const std::string& path);

/// Canonical text: every value printed in file units with exactly
/// decimal_exponent() fractional digits (shortest round-trip form when the
/// instance is not in scaled units).
std::string format_instance(const TransmissionInstance& inst);
void write_instance_file(const std::string& path, const TransmissionInstance& inst);

/// FNV-1a (64-bit) of the canonical text.
std::uint64_t instance_hash(const TransmissionInstance& inst);

struct Query {
  enum class Kind { discrete, continuous };
  Kind kind = Kind::discrete;
  PointId s = 0;
  PointId q = 0;  // discrete target
  Vec2 t;         // continuous target, working units
};

/// Lines "D s q" or "C s x y"; ids are checked against the instance.
std::vector<Query> parse_queries(std::string_view text, const TransmissionInstance& inst);

/// Converts a plain decimal in file units to the instance's working units,
/// exactly when possible.
double parse_coordinate(std::string_view token, const TransmissionInstance& inst);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace txreach
