#include "txreach/oracle_file.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <stdexcept>

#include "txreach/instance_io.hpp"

namespace txreach {

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "discrete") return OracleKind::discrete;
  if (name == "grid") return OracleKind::grid;
  if (name == "continuous") return OracleKind::continuous;
  throw std::invalid_argument("unknown oracle kind: " + std::string(name));
}

std::string_view oracle_kind_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::discrete: return "discrete";
    case OracleKind::grid: return "grid";
    case OracleKind::continuous: return "continuous";
  }
  return "?";
}

OracleKind kind_of(const AnyOracle& o) {
  return static_cast<OracleKind>(o.index() + 1);
}

const TransmissionInstance& instance_of(const AnyOracle& o) {
  return std::visit([](const auto& x) -> const TransmissionInstance& { return x.instance(); }, o);
}

AnyOracle build_oracle(OracleKind kind, TransmissionInstance inst, int k) {
  switch (kind) {
    case OracleKind::discrete: return DiscreteOracle(std::move(inst), k);
    case OracleKind::grid: return GridOracle(std::move(inst));
    case OracleKind::continuous: return ContinuousOracle(std::move(inst), k);
  }
  throw std::invalid_argument("build_oracle: bad kind");
}

bool query_points(const AnyOracle& o, PointId s, PointId q) {
  if (const auto* c = std::get_if<ContinuousOracle>(&o)) return c->discrete().query(s, q);
  if (const auto* d = std::get_if<DiscreteOracle>(&o)) return d->query(s, q);
  return std::get<GridOracle>(o).query(s, q);
}

namespace {

using Tag = std::array<char, 4>;
constexpr Tag kHash{'H', 'A', 'S', 'H'};
constexpr Tag kChains{'C', 'H', 'N', 'S'};
constexpr Tag kIndex{'I', 'D', 'X', 'T'};
constexpr Tag kGrid{'G', 'R', 'I', 'D'};
constexpr Tag kTree{'S', 'E', 'P', 'T'};
constexpr std::array<char, 4> kMagic{'T', 'X', 'R', 'O'};

std::string tag_name(const Tag& t) { return std::string(t.data(), t.size()); }

template <class Fill>
void section(BinaryWriter& out, const Tag& tag, Fill fill) {
  BinaryWriter body;
  fill(body);
  out.put(tag);
  out.put_vector(body.bytes());
}

void save_discrete_parts(BinaryWriter& w, const DiscreteOracle& d) {
  section(w, kChains, [&](BinaryWriter& b) { save_chains(b, d.chains()); });
  section(w, kIndex, [&](BinaryWriter& b) { d.indices().save(b); });
  section(w, kTree, [&](BinaryWriter& b) { d.tree().save(b); });
}

template <class T>
T load_whole(std::span<const std::uint8_t> body, const Tag& tag, auto load) {
  BinaryReader r(body);
  T value = load(r);
  if (!r.done()) throw FormatError("trailing bytes in section " + tag_name(tag));
  return value;
}

}  // namespace

std::vector<std::uint8_t> save_oracle(const AnyOracle& o) {
  BinaryWriter w;
  w.put(kMagic);
  w.put(kOracleFormatVersion);
  w.put(static_cast<std::uint8_t>(kind_of(o)));
  const std::uint64_t hash = instance_hash(instance_of(o));
  section(w, kHash, [&](BinaryWriter& b) { b.put(hash); });
  if (const auto* g = std::get_if<GridOracle>(&o)) {
    section(w, kGrid, [&](BinaryWriter& b) { g->save_grid(b); });
    section(w, kTree, [&](BinaryWriter& b) { g->tree().save(b); });
  } else if (const auto* c = std::get_if<ContinuousOracle>(&o)) {
    save_discrete_parts(w, c->discrete());
  } else {
    save_discrete_parts(w, std::get<DiscreteOracle>(o));
  }
  return w.take();
}

AnyOracle load_oracle(std::span<const std::uint8_t> bytes, TransmissionInstance inst) {
  BinaryReader r(bytes);
  if (r.get<std::array<char, 4>>() != kMagic) throw FormatError("not an oracle file");
  const auto version = r.get<std::uint16_t>();
  if (version != kOracleFormatVersion) throw FormatError("unsupported oracle format version " + std::to_string(version));
  const auto raw_kind = r.get<std::uint8_t>();
  if (raw_kind < 1 || raw_kind > 3) throw FormatError("unknown oracle kind " + std::to_string(raw_kind));
  const auto kind = static_cast<OracleKind>(raw_kind);

  std::map<Tag, std::vector<std::uint8_t>> sections;
  while (!r.done()) {
    const Tag tag = r.get<Tag>();
    if (tag != kHash && tag != kChains && tag != kIndex && tag != kGrid && tag != kTree) {
      throw FormatError("unknown section " + tag_name(tag));
    }
    auto body = r.get_vector<std::uint8_t>();
    if (!sections.emplace(tag, std::move(body)).second) throw FormatError("duplicate section " + tag_name(tag));
  }
  auto need = [&](const Tag& tag) -> std::span<const std::uint8_t> {
    const auto it = sections.find(tag);
    if (it == sections.end()) throw FormatError("missing section " + tag_name(tag));
    return it->second;
  };
  const bool grid = kind == OracleKind::grid;
  if (sections.size() != (grid ? 3U : 4U) || sections.count(grid ? kIndex : kGrid)) {
    throw FormatError("unexpected sections for a " + std::string(oracle_kind_name(kind)) + " oracle");
  }

  const auto stored_hash = load_whole<std::uint64_t>(need(kHash), kHash, [](BinaryReader& b) { return b.get<std::uint64_t>(); });
  if (stored_hash != instance_hash(inst)) throw FormatError("oracle was built for a different instance");

  auto tree = load_whole<SeparationTree>(need(kTree), kTree, [](BinaryReader& b) { return SeparationTree::load(b); });
  if (grid) {
    BinaryReader gr(need(kGrid));
    auto g = GridOracle::assemble(std::move(inst), gr, std::move(tree));
    if (!gr.done()) throw FormatError("trailing bytes in section GRID");
    return g;
  }
  const std::size_t n = inst.size();
  auto chains = load_whole<ChainDecomposition>(need(kChains), kChains, [n](BinaryReader& b) { return load_chains(b, n); });
  auto table = load_whole<ChainIndexTable>(need(kIndex), kIndex, [](BinaryReader& b) { return ChainIndexTable::load(b); });
  auto d = DiscreteOracle::assemble(std::move(inst), std::move(chains), std::move(table), std::move(tree));
  if (kind == OracleKind::continuous) return ContinuousOracle(std::move(d));
  return d;
}

void write_oracle_file(const std::string& path, const AnyOracle& o) {
  const auto bytes = save_oracle(o);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

AnyOracle read_oracle_file(const std::string& path, TransmissionInstance inst) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_oracle(bytes, std::move(inst));
}

}  // namespace txreach
