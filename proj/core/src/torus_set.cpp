#include "pervlen/torus_set.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "pervlen/error.hpp"
#include "text_util.hpp"

namespace pervlen {

mpq_class frac(mpq_class q) {
  q.canonicalize();
  mpz_class floor;
  mpz_fdiv_q(floor.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - mpq_class(floor);
}

TorsionCoset::TorsionCoset(std::size_t ambient_rank, IntMatrix equations, std::vector<mpq_class> rhs)
    : ambient_rank_(ambient_rank), equations_(std::move(equations)), rhs_(std::move(rhs)) {
  if (ambient_rank_ == 0) throw std::invalid_argument("ambient rank must be positive");
  if (equations_.rows() == 0) equations_ = IntMatrix(0, ambient_rank_);
  if (equations_.cols() != ambient_rank_)
    throw std::invalid_argument("equation matrix has " + std::to_string(equations_.cols()) + " columns, expected " +
                                std::to_string(ambient_rank_));
  if (rhs_.size() != equations_.rows()) throw std::invalid_argument("one rhs entry per equation is required");
  for (auto& q : rhs_) q = frac(q);
}

TorsionCoset TorsionCoset::full(std::size_t ambient_rank) { return {ambient_rank, IntMatrix(0, ambient_rank), {}}; }

TorsionCoset TorsionCoset::trivial_at(std::size_t ambient_rank, std::size_t p) {
  if (p >= ambient_rank) throw std::out_of_range("coordinate index out of range");
  IntMatrix e(1, ambient_rank);
  e(0, p) = 1;
  return {ambient_rank, std::move(e), {mpq_class(0)}};
}

TorsionCoset TorsionCoset::point(const TorsionPoint& v) {
  return {v.size(), IntMatrix::identity(v.size()), v};
}

bool canonical_less(const TorsionCoset& a, const TorsionCoset& b) {
  if (a.ambient_rank() != b.ambient_rank()) return a.ambient_rank() < b.ambient_rank();
  const IntMatrix& ea = a.equations();
  const IntMatrix& eb = b.equations();
  if (ea.rows() != eb.rows()) return ea.rows() < eb.rows();
  for (std::size_t i = 0; i < ea.rows(); ++i)
    for (std::size_t j = 0; j < ea.cols(); ++j)
      if (ea(i, j) != eb(i, j)) return ea(i, j) < eb(i, j);
  for (std::size_t i = 0; i < a.rhs().size(); ++i)
    if (a.rhs()[i] != b.rhs()[i]) return a.rhs()[i] < b.rhs()[i];
  return false;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Row Hermite normal form of a full-row-rank system, applying the same row
// operations to rhs mod 1.
void row_hermite(IntMatrix& m, std::vector<mpq_class>& rhs) {
  auto add_row = [&](std::size_t target, std::size_t source, std::int64_t f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) = checked_add(m(target, j), checked_mul(f, m(source, j)));
    rhs[target] = frac(rhs[target] + mpq_class(f) * rhs[source]);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
    std::swap(rhs[a], rhs[b]);
  };

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = pivot_row; i < m.rows(); ++i)
        if (m(i, col) != 0 && (best == m.rows() || std::llabs(m(i, col)) < std::llabs(m(best, col)))) best = i;
      if (best == m.rows()) break;
      swap_rows(pivot_row, best);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        add_row(i, pivot_row, -(m(i, col) / m(pivot_row, col)));
        if (m(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (m(pivot_row, col) == 0) continue;
    if (m(pivot_row, col) < 0) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(pivot_row, j) = -m(pivot_row, j);
      rhs[pivot_row] = frac(-rhs[pivot_row]);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      const std::int64_t q = floor_div(m(i, col), m(pivot_row, col));
      if (q != 0) add_row(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  if (pivot_row != m.rows()) throw std::logic_error("row_hermite expects independent rows");
}

struct Analysis {
  SmithForm snf;
  std::vector<mpq_class> transformed;  // U * rhs
  bool consistent = true;
};

Analysis analyze(const TorsionCoset& c) {
  Analysis a{smith_normal_form(c.equations()), {}, true};
  const IntMatrix& u = a.snf.u;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < u.cols(); ++j) s += mpq_class(u(i, j)) * c.rhs()[j];
    a.transformed.push_back(frac(s));
  }
  for (std::size_t i = a.snf.rank; i < a.transformed.size(); ++i)
    if (a.transformed[i] != 0) a.consistent = false;
  return a;
}

TorsionCoset hermite_coset(std::size_t b, IntMatrix rows, std::vector<mpq_class> rhs) {
  row_hermite(rows, rhs);
  return {b, std::move(rows), std::move(rhs)};
}

}  // namespace

std::optional<NormalizedCoset> coset_normalize(const TorsionCoset& c) {
  const Analysis a = analyze(c);
  if (!a.consistent) return std::nullopt;
  const std::size_t b = c.ambient_rank();
  const std::size_t r = a.snf.rank;
  IntMatrix basis(r, b);
  std::vector<mpq_class> rhs;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < b; ++j) basis(i, j) = checked_mul(a.snf.d(i, i), a.snf.v_inverse(i, j));
    rhs.push_back(a.transformed[i]);
  }
  return NormalizedCoset{hermite_coset(b, std::move(basis), std::move(rhs)), b - r, a.snf.divisors()};
}

std::vector<TorsionCoset> coset_components(const TorsionCoset& c) {
  const Analysis a = analyze(c);
  if (!a.consistent) return {};
  const std::size_t b = c.ambient_rank();
  const std::size_t r = a.snf.rank;
  const auto divisors = a.snf.divisors();

  std::int64_t count = 1;
  for (const auto d : divisors) {
    count = checked_mul(count, d);
    if (count > kComponentGuard)
      throw GuardExceeded("splitting needs more than " + std::to_string(kComponentGuard) + " components");
  }

  const IntMatrix rows = a.snf.v_inverse.row_block(0, r);
  std::vector<TorsionCoset> out;
  out.reserve(static_cast<std::size_t>(count));
  // Mixed-radix counter over the d_i-th roots.
  std::vector<std::int64_t> root(r, 0);
  for (std::int64_t n = 0; n < count; ++n) {
    std::vector<mpq_class> rhs;
    for (std::size_t i = 0; i < r; ++i) rhs.push_back((a.transformed[i] + root[i]) / mpq_class(divisors[i]));
    out.push_back(hermite_coset(b, rows, std::move(rhs)));
    for (std::size_t i = 0; i < r; ++i) {
      if (++root[i] < divisors[i]) break;
      root[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<TorsionCoset> intersect_cosets(const TorsionCoset& a, const TorsionCoset& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("ambient rank mismatch: " + std::to_string(a.ambient_rank()) + " vs " +
                                std::to_string(b.ambient_rank()));
  std::vector<mpq_class> rhs = a.rhs();
  rhs.insert(rhs.end(), b.rhs().begin(), b.rhs().end());
  return coset_components(TorsionCoset(a.ambient_rank(), a.equations().stacked(b.equations()), std::move(rhs)));
}

bool member_torsion(const TorsionCoset& c, const TorsionPoint& v) {
  if (v.size() != c.ambient_rank()) throw std::invalid_argument("point and coset live in tori of different rank");
  const IntMatrix& e = c.equations();
  for (std::size_t i = 0; i < e.rows(); ++i) {
    mpq_class s = -c.rhs()[i];
    for (std::size_t j = 0; j < e.cols(); ++j) s += mpq_class(e(i, j)) * v[j];
    if (s.get_den() != 1) return false;
  }
  return true;
}

bool member_torsion(const TorusFormula& f, const TorsionPoint& v) {
  if (v.size() != f.ambient_rank) throw std::invalid_argument("point and formula live in tori of different rank");
  return f.formula.evaluate([&](const TorsionCoset& c) { return member_torsion(c, v); });
}

TorusFormula rank1_jump_locus(std::size_t n, int k) {
  if (n == 0 || n > 62) throw std::invalid_argument("puncture count must be in 1..62");
  TorusFormula out{n, CosetFormula::falsity()};
  if (k < 1 || static_cast<std::size_t>(k - 1) > n) return out;
  const auto trivial_count = static_cast<std::size_t>(k - 1);

  std::vector<CosetFormula> atoms;
  for (std::size_t p = 0; p < n; ++p) atoms.push_back(CosetFormula::atom(TorsionCoset::trivial_at(n, p)));

  std::vector<CosetFormula> terms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != trivial_count) continue;
    std::vector<CosetFormula> literals;
    for (std::size_t p = 0; p < n; ++p)
      literals.push_back((mask >> p) & 1U ? atoms[p] : CosetFormula::negate(atoms[p]));
    terms.push_back(CosetFormula::conj(literals));
  }
  out.formula = CosetFormula::disj(terms);
  return out;
}

// ---------------------------------------------------------------------------
// Text

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr const char* kHeader = "# pervlen-torus v1\n";

ojson coset_json(const TorsionCoset& c) {
  ojson eq = ojson::array();
  for (std::size_t i = 0; i < c.equations().rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < c.equations().cols(); ++j) row.push_back(c.equations()(i, j));
    eq.push_back(std::move(row));
  }
  ojson rhs = ojson::array();
  for (const auto& q : c.rhs()) rhs.push_back(q.get_str());
  ojson out;
  out["equations"] = std::move(eq);
  out["rhs"] = std::move(rhs);
  return out;
}

ojson node_json(const CosetFormula& f) {
  using Kind = CosetFormula::Kind;
  ojson out;
  switch (f.kind()) {
    case Kind::kFalse:
      out["op"] = "false";
      break;
    case Kind::kTrue:
      out["op"] = "true";
      break;
    case Kind::kLeaf:
      return coset_json(f.leaf());
    case Kind::kNot:
      out["op"] = "not";
      out["arg"] = node_json(f.children()[0]);
      break;
    case Kind::kAnd:
    case Kind::kOr: {
      out["op"] = f.kind() == Kind::kAnd ? "and" : "or";
      ojson args = ojson::array();
      for (const auto& c : f.children()) args.push_back(node_json(c));
      out["args"] = std::move(args);
      break;
    }
  }
  return out;
}

mpq_class parse_rational(std::string_view text, const std::string& where) {
  static const std::regex shape(R"(\s*[-+]?\d+(\s*/\s*\d+)?\s*)");
  const std::string s(text);
  if (!std::regex_match(s, shape)) throw ParseError(where, "expected a rational p/q, got '" + s + "'");
  std::string compact;
  for (const char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '+') compact.push_back(ch);
  const auto slash = compact.find('/');
  if (slash != std::string::npos && mpz_class(compact.substr(slash + 1)) == 0)
    throw ParseError(where, "zero denominator");
  mpq_class q(compact);
  q.canonicalize();
  return q;
}

mpq_class rational_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>(), where);
  throw ParseError(where, "expected a rational string");
}

TorsionCoset parse_coset(const json& j, std::size_t b, const std::string& where) {
  if (!j.contains("equations") || !j.contains("rhs")) throw ParseError(where, "coset needs \"equations\" and \"rhs\"");
  const json& eq = j.at("equations");
  const json& rhs_j = j.at("rhs");
  if (!eq.is_array()) throw ParseError(where + ".equations", "expected an array of integer rows");
  if (!rhs_j.is_array()) throw ParseError(where + ".rhs", "expected an array");
  if (rhs_j.size() != eq.size())
    throw ParseError(where + ".rhs", "expected " + std::to_string(eq.size()) + " entries, found " + std::to_string(rhs_j.size()));
  IntMatrix m(eq.size(), b);
  for (std::size_t i = 0; i < eq.size(); ++i) {
    const std::string row_where = where + ".equations[" + std::to_string(i) + "]";
    const json& row = eq[i];
    if (!row.is_array()) throw ParseError(row_where, "expected an array of integers");
    if (row.size() != b)
      throw ParseError(row_where, "ambient rank mismatch: expected " + std::to_string(b) + " entries, found " + std::to_string(row.size()));
    for (std::size_t c = 0; c < b; ++c) {
      if (!row[c].is_number_integer()) throw ParseError(row_where + "[" + std::to_string(c) + "]", "expected an integer");
      m(i, c) = row[c].get<std::int64_t>();
    }
  }
  std::vector<mpq_class> rhs;
  for (std::size_t i = 0; i < rhs_j.size(); ++i)
    rhs.push_back(rational_field(rhs_j[i], where + ".rhs[" + std::to_string(i) + "]"));
  return {b, std::move(m), std::move(rhs)};
}

CosetFormula parse_node(const json& j, std::size_t b, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  if (!j.contains("op")) return CosetFormula::atom(parse_coset(j, b, where));
  const json& op_j = j.at("op");
  if (!op_j.is_string()) throw ParseError(where + ".op", "expected a string");
  const std::string op = op_j.get<std::string>();
  if (op == "true") return CosetFormula::truth();
  if (op == "false") return CosetFormula::falsity();
  if (op == "not") {
    if (!j.contains("arg")) throw ParseError(where, "\"not\" needs \"arg\"");
    return CosetFormula::negate(parse_node(j.at("arg"), b, where + ".arg"));
  }
  if (op == "and" || op == "or") {
    if (!j.contains("args") || !j.at("args").is_array()) throw ParseError(where, "\"" + op + "\" needs an \"args\" array");
    std::vector<CosetFormula> args;
    const json& arr = j.at("args");
    for (std::size_t i = 0; i < arr.size(); ++i)
      args.push_back(parse_node(arr[i], b, where + ".args[" + std::to_string(i) + "]"));
    return op == "and" ? CosetFormula::conj(args) : CosetFormula::disj(args);
  }
  throw ParseError(where + ".op", "unknown operator '" + op + "'");
}

std::size_t ambient_field(const json& j) {
  const json& b = j.at("ambient_rank");
  if (!b.is_number_integer() || b.get<long long>() < 1) throw ParseError("ambient_rank", "expected a positive integer");
  return static_cast<std::size_t>(b.get<long long>());
}

}  // namespace

std::string to_text(const TorusFormula& f) {
  ojson out;
  out["ambient_rank"] = f.ambient_rank;
  out["formula"] = node_json(f.formula);
  return kHeader + out.dump() + "\n";
}

std::string components_to_text(std::size_t ambient_rank, const std::vector<TorsionCoset>& cs) {
  ojson out;
  out["ambient_rank"] = ambient_rank;
  ojson list = ojson::array();
  for (const auto& c : cs) list.push_back(coset_json(c));
  out["components"] = std::move(list);
  return kHeader + out.dump() + "\n";
}

TorusFormula parse_torus_formula(std::string_view text) {
  std::size_t skipped = 0;
  const std::string body = detail::strip_comment_lines(text, skipped);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, body.size());
    const auto line = skipped + 1 +
        static_cast<std::size_t>(std::count(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ParseError("line " + std::to_string(line), "invalid JSON");
  }
  if (!j.is_object()) throw ParseError("document", "expected a JSON object");

  if (j.contains("formula")) {
    if (!j.contains("ambient_rank")) throw ParseError("ambient_rank", "missing field");
    const std::size_t b = ambient_field(j);
    return {b, parse_node(j.at("formula"), b, "formula")};
  }
  if (j.contains("components")) {
    if (!j.contains("ambient_rank")) throw ParseError("ambient_rank", "missing field");
    const std::size_t b = ambient_field(j);
    const json& list = j.at("components");
    if (!list.is_array()) throw ParseError("components", "expected an array");
    std::vector<CosetFormula> parts;
    for (std::size_t i = 0; i < list.size(); ++i)
      parts.push_back(CosetFormula::atom(parse_coset(list[i], b, "components[" + std::to_string(i) + "]")));
    return {b, CosetFormula::disj(parts)};
  }
  std::size_t b = 0;
  if (j.contains("ambient_rank")) {
    b = ambient_field(j);
  } else if (j.contains("equations") && j.at("equations").is_array() && !j.at("equations").empty() &&
             j.at("equations")[0].is_array()) {
    b = j.at("equations")[0].size();
  }
  if (b == 0) throw ParseError("ambient_rank", "cannot infer the ambient rank");
  return {b, CosetFormula::atom(parse_coset(j, b, "coset"))};
}

TorsionPoint parse_torsion_point(std::string_view text) {
  std::string s(text);
  for (char& ch : s)
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',') ch = ' ';
  TorsionPoint out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
    out.push_back(frac(parse_rational(s.substr(pos, end - pos), "point[" + std::to_string(out.size()) + "]")));
    pos = end;
  }
  if (out.empty()) throw ParseError("point", "expected at least one coordinate");
  return out;
}

std::string to_string(const TorsionPoint& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out + ")";
}

}  // namespace pervlen
