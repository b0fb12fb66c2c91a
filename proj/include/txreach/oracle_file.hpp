#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "txreach/continuous_oracle.hpp"
#include "txreach/discrete_oracle.hpp"
#include "txreach/geom.hpp"
#include "txreach/grid_oracle.hpp"

namespace txreach {

enum class OracleKind : std::uint8_t { discrete = 1, grid = 2, continuous = 3 };

/// "discrete" | "grid" | "continuous"; throws std::invalid_argument.
OracleKind parse_oracle_kind(std::string_view name);
std::string_view oracle_kind_name(OracleKind kind);

using AnyOracle = std::variant<DiscreteOracle, GridOracle, ContinuousOracle>;

OracleKind kind_of(const AnyOracle& o);
const TransmissionInstance& instance_of(const AnyOracle& o);
/// `k` is ignored by the grid oracle.
AnyOracle build_oracle(OracleKind kind, TransmissionInstance inst, int k = 20);

/// Point-to-point reachability. Continuous oracles answer it through their
/// discrete part.
bool query_points(const AnyOracle& o, PointId s, PointId q);

inline constexpr std::uint16_t kOracleFormatVersion = 1;

/// Layout: "TXRO", u16 version, u8 kind, then sections until the end. Each
/// section is a 4-byte tag and a u64 length followed by that many bytes:
///   HASH  instance hash (u64)
///   CHNS  chain decomposition          (discrete, continuous)
///   IDXT  chain index table            (discrete, continuous)
///   GRID  grid assignment, edge count  (grid)
///   SEPT  separation tree              (all kinds)
/// Continuous-oracle membership trees are rebuilt on load.
std::vector<std::uint8_t> save_oracle(const AnyOracle& o);
/// Throws FormatError on a malformed container or when the embedded hash
/// differs from instance_hash(inst).
AnyOracle load_oracle(std::span<const std::uint8_t> bytes, TransmissionInstance inst);

void write_oracle_file(const std::string& path, const AnyOracle& o);
AnyOracle read_oracle_file(const std::string& path, TransmissionInstance inst);

}  // namespace txreach
