#include "txreach/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace txreach {

namespace {

constexpr int kMaxScaleDigits = 15;

struct Decimal {
  bool negative = false;
  std::string digits;  // integer and fractional digits, leading zeros removed
  int frac = 0;
  double value = 0.0;
};

std::optional<Decimal> lex_decimal(std::string_view s) {
  Decimal d;
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') {
    d.negative = true;
    ++i;
  }
  const std::size_t int_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == int_begin) return std::nullopt;
  std::string all(s.substr(int_begin, i - int_begin));
  if (i < s.size() && s[i] == '.') {
    ++i;
    const std::size_t frac_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == frac_begin) return std::nullopt;
    d.frac = static_cast<int>(i - frac_begin);
    all += s.substr(frac_begin, i - frac_begin);
  }
  if (i != s.size()) return std::nullopt;
  const auto first = all.find_first_not_of('0');
  d.digits = first == std::string::npos ? std::string() : all.substr(first);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), d.value, std::chars_format::fixed);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(d.value)) return std::nullopt;
  return d;
}

// The decimal as an integer multiple of 10^-e, if that is exact in a double.
std::optional<double> scaled(const Decimal& d, int e) {
  if (d.frac > e) return std::nullopt;
  if (d.digits.empty()) return 0.0;
  const std::size_t width = d.digits.size() + static_cast<std::size_t>(e - d.frac);
  if (width > kMaxScaleDigits) return std::nullopt;
  std::int64_t m = 0;
  for (char c : d.digits) m = m * 10 + (c - '0');
  for (int k = d.frac; k < e; ++k) m *= 10;
  const auto v = static_cast<double>(m);
  return d.negative ? -v : v;
}

std::optional<std::uint64_t> lex_count(std::string_view s) {
  if (s.empty() || s.size() > 19) return std::nullopt;
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits on '\n', dropping one trailing '\r' per line. A final newline does
// not start another line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(' ', start);
    out.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string format_scaled(double working, int e) {
  const auto m = static_cast<std::int64_t>(working);
  std::string digits = std::to_string(m < 0 ? -m : m);
  if (e > 0) {
    if (digits.size() <= static_cast<std::size_t>(e)) digits.insert(0, static_cast<std::size_t>(e) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(e), 1, '.');
  }
  return m < 0 ? "-" + digits : digits;
}

std::string format_double(double v) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::string format_value(const TransmissionInstance& inst, double working) {
  if (working == std::floor(working) && std::fabs(working) < 9.0e15) {
    return format_scaled(working + 0.0, inst.decimal_exponent());
  }
  return format_double(inst.from_working(working));
}

}  // namespace

TransmissionInstance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "missing point count");
  const auto n = lex_count(lines[0]);
  if (!n) throw ParseError(1, "point count must be a non-negative integer");
  if (lines.size() < *n + 1) throw ParseError(lines.size() + 1, "expected " + std::to_string(*n) + " points");
  for (std::size_t i = *n + 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) throw ParseError(i + 1, "trailing content after the last point");
  }

  std::vector<Decimal> values;
  values.reserve(*n * 3);
  int e = 0;
  for (std::size_t i = 1; i <= *n; ++i) {
    const auto tokens = split_spaces(lines[i]);
    if (tokens.size() != 3) throw ParseError(i + 1, "expected \"x y r\"");
    for (const auto& tok : tokens) {
      auto d = lex_decimal(tok);
      if (!d) throw ParseError(i + 1, "not a plain decimal: \"" + std::string(tok) + "\"");
      e = std::max(e, d->frac);
      values.push_back(std::move(*d));
    }
  }

  std::vector<TransmissionInstance::Raw> raw(*n);
  bool exact = e <= kMaxScaleDigits;
  std::vector<double> working(values.size());
  for (std::size_t k = 0; exact && k < values.size(); ++k) {
    const auto v = scaled(values[k], e);
    if (!v) exact = false;
    else working[k] = *v;
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = exact ? working[k] : values[k].value;
    auto& point = raw[k / 3];
    (k % 3 == 0 ? point.x : k % 3 == 1 ? point.y : point.r) = v;
  }
  try {
    return TransmissionInstance(raw, exact ? e : 0);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(0, ex.what());
  }
}

TransmissionInstance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

std::string format_instance(const TransmissionInstance& inst) {
  std::string out = std::to_string(inst.size()) + "\n";
  for (const auto& p : inst.points()) {
    out += format_value(inst, p.x);
    out += ' ';
    out += format_value(inst, p.y);
    out += ' ';
    out += format_value(inst, p.r);
    out += '\n';
  }
  return out;
}

void write_instance_file(const std::string& path, const TransmissionInstance& inst) {
  write_text_file(path, format_instance(inst));
}

std::uint64_t instance_hash(const TransmissionInstance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double parse_coordinate(std::string_view token, const TransmissionInstance& inst) {
  const auto d = lex_decimal(token);
  if (!d) throw ParseError(0, "not a plain decimal: \"" + std::string(token) + "\"");
  if (const auto v = scaled(*d, inst.decimal_exponent())) return *v;
  return inst.to_working(d->value);
}

std::vector<Query> parse_queries(std::string_view text, const TransmissionInstance& inst) {
  std::vector<Query> out;
  const auto lines = split_lines(text);
  auto id = [&](std::string_view tok, std::size_t line) {
    const auto v = lex_count(tok);
    if (!v || *v >= inst.size()) throw ParseError(line, "invalid point id \"" + std::string(tok) + "\"");
    return static_cast<PointId>(*v);
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto tok = split_spaces(lines[i]);
    Query q;
    if (tok[0] == "D" && tok.size() == 3) {
      q.kind = Query::Kind::discrete;
      q.s = id(tok[1], i + 1);
      q.q = id(tok[2], i + 1);
    } else if (tok[0] == "C" && tok.size() == 4) {
      q.kind = Query::Kind::continuous;
      q.s = id(tok[1], i + 1);
      try {
        q.t = {parse_coordinate(tok[2], inst), parse_coordinate(tok[3], inst)};
      } catch (const ParseError& e) {
        throw ParseError(i + 1, e.what());
      }
    } else {
      throw ParseError(i + 1, "expected \"D s q\" or \"C s x y\"");
    }
    out.push_back(q);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace txreach
