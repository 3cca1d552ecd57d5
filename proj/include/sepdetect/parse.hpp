#pragma once

// Text forms used by the command line:
//
//   state      isotropic:d1=2,d2=3,p=0.4    horodecki:x=0.9,q=0.99
//              bound2x4:d=0.9,x=0.3          ex2:p=0.7
//              ex4:a1=0.1,a2=0.3,a3=0.2      random:M=3,N=3,rank=9,seed=42
//              separable:M=2,N=3,terms=4,seed=7
//              file:<path>   (needs dims given separately)
//   criterion  devicente  enhanced  ppt  realignment
//              shen:m=2,a=1,b=1              theorem1:alpha=[0.5,0.5],beta=[1]
//              corollary2:a=1.4,b=2.4        theorem2:a=1
//              theorem3:a=0.4,b=1,alpha=[1,3],beta=[1,-2]
//
// Numbers are parsed with std::from_chars, so the global locale never
// matters. Unknown names and keys are rejected.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "sepdetect/criteria.hpp"
#include "sepdetect/density.hpp"
#include "sepdetect/errors.hpp"
#include "sepdetect/states.hpp"

namespace sepdetect {

using SpecValue = std::variant<double, std::vector<double>>;

struct ParsedSpec {
  std::string name;
  std::map<std::string, SpecValue> values;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
    throw InvalidInput("cannot parse number '" + std::string(text) + "' in " + std::string(context));
  return value;
}

inline std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth < 0) throw InvalidInput("unbalanced ']' in '" + std::string(s) + "'");
    if (s[i] == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw InvalidInput("unbalanced '[' in '" + std::string(s) + "'");
  parts.push_back(s.substr(start));
  return parts;
}

}  // namespace detail

/// Splits `name:key=value,...`; values are numbers or `[n1,n2,...]`.
inline ParsedSpec parse_spec(std::string_view text) {
  text = detail::trim(text);
  ParsedSpec spec;
  const auto colon = text.find(':');
  spec.name = std::string(detail::trim(text.substr(0, colon)));
  if (spec.name.empty()) throw InvalidInput("empty spec name in '" + std::string(text) + "'");
  if (colon == std::string_view::npos) return spec;

  const auto body = detail::trim(text.substr(colon + 1));
  if (body.empty()) return spec;
  for (auto item : detail::split_top_level(body)) {
    item = detail::trim(item);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw InvalidInput("expected key=value, got '" + std::string(item) + "'");
    const std::string key(detail::trim(item.substr(0, eq)));
    const auto raw = detail::trim(item.substr(eq + 1));
    if (key.empty()) throw InvalidInput("empty key in '" + std::string(text) + "'");
    if (spec.values.count(key)) throw InvalidInput("duplicate key '" + key + "'");
    if (!raw.empty() && raw.front() == '[') {
      if (raw.back() != ']') throw InvalidInput("vector value for '" + key + "' lacks ']'");
      std::vector<double> v;
      const auto inner = detail::trim(raw.substr(1, raw.size() - 2));
      if (!inner.empty())
        for (auto piece : detail::split_top_level(inner)) v.push_back(detail::parse_number(piece, key));
      spec.values.emplace(key, std::move(v));
    } else {
      spec.values.emplace(key, detail::parse_number(raw, key));
    }
  }
  return spec;
}

/// Typed access to a ParsedSpec that remembers which keys were read, so
/// leftovers can be rejected.
class SpecReader {
 public:
  explicit SpecReader(const ParsedSpec& spec) : spec_(spec) {}

  bool has(const std::string& key) const { return spec_.values.count(key) > 0; }

  double number(const std::string& key) {
    const auto* v = find(key);
    if (!v) throw InvalidInput(spec_.name + ": missing required key '" + key + "'");
    if (const auto* d = std::get_if<double>(v)) return *d;
    throw InvalidInput(spec_.name + ": key '" + key + "' expects a number, got a vector");
  }

  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count(const std::string& key) {
    const double d = number(key);
    if (d < 1.0 || d != std::floor(d) || d > 1e9)
      throw InvalidInput(spec_.name + ": key '" + key + "' expects a positive integer");
    return static_cast<std::size_t>(d);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    return has(key) ? count(key) : fallback;
  }

  /// A vector value; a bare number is accepted as a length-1 vector.
  RealVector vector(const std::string& key) {
    const auto* v = find(key);
    if (!v) throw InvalidInput(spec_.name + ": missing required key '" + key + "'");
    if (const auto* d = std::get_if<double>(v)) return RealVector::Constant(1, *d);
    const auto& list = std::get<std::vector<double>>(*v);
    RealVector out(static_cast<Eigen::Index>(list.size()));
    for (std::size_t i = 0; i < list.size(); ++i) out(i) = list[i];
    return out;
  }

  void finish() const {
    for (const auto& [key, _] : spec_.values)
      if (!used_.count(key)) throw InvalidInput(spec_.name + ": unknown key '" + key + "'");
  }

 private:
  const SpecValue* find(const std::string& key) {
    const auto it = spec_.values.find(key);
    if (it == spec_.values.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  const ParsedSpec& spec_;
  std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// Matrix files
// ---------------------------------------------------------------------------

/// Parses one complex entry: `re`, `imi`, `re+imi` or `re-imi`.
inline Complex parse_complex(std::string_view token) {
  token = detail::trim(token);
  if (token.empty()) throw InvalidInput("empty complex entry");
  if (token.back() != 'i') return {detail::parse_number(token, "matrix entry"), 0.0};
  const auto body = token.substr(0, token.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_text = split == std::string_view::npos ? body : body.substr(split);
  const double re = split == std::string_view::npos ? 0.0 : detail::parse_number(body.substr(0, split), "matrix entry");
  if (imag_text == "+" || imag_text == "-" || imag_text.empty())
    return {re, imag_text == "-" ? -1.0 : 1.0};
  return {re, detail::parse_number(imag_text, "matrix entry")};
}

/// Reads a whitespace-separated complex matrix, one row per line. Blank lines
/// and lines starting with '#' are skipped.
inline ComplexMatrix read_matrix(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields{std::string(t)};
    std::vector<Complex> row;
    std::string token;
    while (fields >> token) row.push_back(parse_complex(token));
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidInput("matrix row " + std::to_string(rows.size() + 1) + " has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("matrix file is empty");
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

/// "M,N" -> Dims.
inline Dims parse_dims(std::string_view text) {
  const auto parts = detail::split_top_level(text);
  if (parts.size() != 2) throw InvalidInput("dims must look like M,N");
  const double m = detail::parse_number(parts[0], "dims");
  const double n = detail::parse_number(parts[1], "dims");
  if (m < 1 || n < 1 || m != std::floor(m) || n != std::floor(n))
    throw InvalidInput("dims must be positive integers");
  return {static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
}

// ---------------------------------------------------------------------------
// States and families
// ---------------------------------------------------------------------------

/// Seed for random factories when a spec gives none: SEPDETECT_SEED, else 0.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("SEPDETECT_SEED")) {
    const std::string_view text(env);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw InvalidInput("SEPDETECT_SEED must be a nonnegative integer");
    return seed;
  }
  return 0;
}

namespace detail {

inline std::uint64_t read_seed(SpecReader& r) {
  if (!r.has("seed")) return default_seed();
  const double d = r.number("seed");
  if (d < 0 || d != std::floor(d) || d > 9.0e15) throw InvalidInput("seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(d);
}

inline const std::map<std::string, std::set<std::string>>& state_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"isotropic", {"d1", "d2", "p"}},
      {"horodecki", {"x", "q"}},
      {"bound2x4", {"d", "x"}},
      {"ex2", {"p"}},
      {"ex4", {"a1", "a2", "a3"}},
      {"random", {"M", "N", "rank", "seed"}},
      {"separable", {"M", "N", "terms", "seed"}},
  };
  return keys;
}

}  // namespace detail

inline DensityMatrix make_state(const ParsedSpec& spec) {
  SpecReader r(spec);
  auto done = [&r](DensityMatrix rho) {
    r.finish();
    return rho;
  };
  const auto& n = spec.name;
  if (n == "isotropic") return done(isotropic(r.count("d1"), r.count("d2"), r.number("p")));
  if (n == "horodecki") return done(horodecki_mixture(r.number("x"), r.number("q", 1.0)));
  if (n == "bound2x4") return done(bound_2x4_mixture(r.number("d"), r.number("x", 0.0)));
  if (n == "ex2") return done(two_qubit_ex2(r.number("p")));
  if (n == "ex4") return done(two_qubit_ex4(r.number("a1"), r.number("a2"), r.number("a3")));
  if (n == "random") {
    const Dims d{r.count("M"), r.count("N")};
    const std::size_t rank = r.count("rank", d.total());
    return done(random_density(d, rank, detail::read_seed(r)));
  }
  if (n == "separable") {
    const Dims d{r.count("M"), r.count("N")};
    const std::size_t terms = r.count("terms", 4);
    return done(random_separable(d, terms, detail::read_seed(r)));
  }
  throw InvalidInput("unknown state '" + n +
                     "' (expected isotropic, horodecki, bound2x4, ex2, ex4, random, separable, file)");
}

/// Parses and builds a state. `file:<path>` needs `dims`.
inline DensityMatrix make_state(std::string_view text, std::optional<Dims> dims = std::nullopt) {
  text = detail::trim(text);
  if (text.substr(0, 5) == "file:") {
    if (!dims) throw InvalidInput("file states need --dims M,N");
    return DensityMatrix(read_matrix_file(std::string(text.substr(5))), *dims);
  }
  return make_state(parse_spec(text));
}

/// A family obtained by leaving `parameter` free in a state spec, e.g.
/// make_family("bound2x4:d=0.9", "x").
inline StateFamily make_family(std::string_view text, const std::string& parameter) {
  ParsedSpec base = parse_spec(text);
  const auto& keys = detail::state_keys();
  const auto it = keys.find(base.name);
  if (it == keys.end()) throw InvalidInput("unknown state family '" + base.name + "'");
  if (!it->second.count(parameter))
    throw InvalidInput("state '" + base.name + "' has no parameter '" + parameter + "'");
  if (base.values.count(parameter))
    throw InvalidInput("parameter '" + parameter + "' is both fixed and free");
  for (const auto& [key, _] : base.values)
    if (!it->second.count(key)) throw InvalidInput(base.name + ": unknown key '" + key + "'");

  StateFamily family;
  family.name = std::string(detail::trim(text));
  family.parameter = parameter;
  family.evaluator = [base, parameter](double value) {
    ParsedSpec at = base;
    at.values[parameter] = value;
    return make_state(at);
  };
  return family;
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

inline CriterionSpec parse_criterion(const ParsedSpec& spec) {
  SpecReader r(spec);
  CriterionSpec c;
  auto& p = c.params;
  const auto& n = spec.name;
  if (n == "devicente" || n == "de_vicente") {
    c.kind = CriterionKind::DeVicente;
  } else if (n == "enhanced") {
    c.kind = CriterionKind::Enhanced;
  } else if (n == "shen") {
    c.kind = CriterionKind::Shen;
    p.m_rows = r.count("m", 1);
    p.a = r.number("a");
    p.b = r.number("b");
  } else if (n == "theorem1") {
    c.kind = CriterionKind::Theorem1;
    p.alpha = r.vector("alpha");
    p.beta = r.vector("beta");
  } else if (n == "corollary2") {
    c.kind = CriterionKind::Corollary2;
    p.a = r.number("a");
    p.b = r.number("b");
  } else if (n == "theorem2") {
    c.kind = CriterionKind::Theorem2;
    p.a = r.number("a");
  } else if (n == "theorem3") {
    c.kind = CriterionKind::Theorem3;
    p.a = r.number("a");
    p.b = r.number("b");
    p.alpha = r.vector("alpha");
    p.beta = r.vector("beta");
  } else if (n == "ppt") {
    c.kind = CriterionKind::Ppt;
  } else if (n == "realignment") {
    c.kind = CriterionKind::Realignment;
  } else {
    throw InvalidInput("unknown criterion '" + n +
                       "' (expected devicente, enhanced, shen, theorem1, corollary2, theorem2, "
                       "theorem3, ppt, realignment)");
  }
  r.finish();
  return c;
}

inline CriterionSpec parse_criterion(std::string_view text) { return parse_criterion(parse_spec(text)); }

}  // namespace sepdetect
