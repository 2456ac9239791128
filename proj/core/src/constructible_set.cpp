#include "pervlen/constructible_set.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pervlen/error.hpp"

namespace pervlen {

PolyAtom::PolyAtom(const Polynomial& p) {
  if (p.is_constant()) throw std::invalid_argument("a polynomial atom must be non-constant");
  poly_ = p.primitive();
}

ConstructibleSet::ConstructibleSet(std::vector<std::string> vars, Formula formula)
    : vars_(std::move(vars)), formula_(std::move(formula)) {
  for (const auto& atom : formula_.leaves())
    if (atom.poly().nvars() != vars_.size())
      throw std::invalid_argument("atom variable count does not match the set's variables");
}

ConstructibleSet ConstructibleSet::empty(std::vector<std::string> vars) {
  return ConstructibleSet(std::move(vars), Formula::falsity());
}

ConstructibleSet ConstructibleSet::full(std::vector<std::string> vars) {
  return ConstructibleSet(std::move(vars), Formula::truth());
}

ConstructibleSet ConstructibleSet::zero_set(std::vector<std::string> vars, const Polynomial& p) {
  if (p.is_zero()) return full(std::move(vars));
  if (p.is_constant()) return empty(std::move(vars));
  return ConstructibleSet(std::move(vars), Formula::atom(PolyAtom(p)));
}

bool ConstructibleSet::contains(std::span<const Scalar> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("point dimension does not match variables");
  return formula_.evaluate([&](const PolyAtom& a) { return a.poly().evaluate(point).is_zero(); });
}

namespace {

void require_same_vars(const ConstructibleSet& s, const ConstructibleSet& t) {
  if (s.vars() != t.vars()) throw std::invalid_argument("constructible sets use different variables");
}

}  // namespace

ConstructibleSet set_union(const ConstructibleSet& s, const ConstructibleSet& t) {
  require_same_vars(s, t);
  return ConstructibleSet(s.vars(), ConstructibleSet::Formula::disj({s.formula(), t.formula()}));
}

ConstructibleSet set_intersect(const ConstructibleSet& s, const ConstructibleSet& t) {
  require_same_vars(s, t);
  return ConstructibleSet(s.vars(), ConstructibleSet::Formula::conj({s.formula(), t.formula()}));
}

ConstructibleSet set_complement(const ConstructibleSet& s) {
  return ConstructibleSet(s.vars(), ConstructibleSet::Formula::negate(s.formula()));
}

ConstructibleSet set_difference(const ConstructibleSet& s, const ConstructibleSet& t) {
  return set_intersect(s, set_complement(t));
}

bool member(const ConstructibleSet& s, std::span<const Scalar> point) { return s.contains(point); }

Equivalence equivalent_on(const ConstructibleSet& s, const ConstructibleSet& t,
                          std::span<const LabeledPoint> sample) {
  require_same_vars(s, t);
  for (const auto& p : sample) {
    if (s.contains(p.coords) != t.contains(p.coords)) return {false, p};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Conjunction reduction

namespace {

struct Substitution {
  std::size_t var;
  Polynomial value;
};

Polynomial apply_all(Polynomial p, const std::vector<Substitution>& subs) {
  for (const auto& s : subs) p = p.substitute(s.var, s.value);
  return p;
}

}  // namespace

std::optional<Conjunction> reduce_conjunction(std::span<const Polynomial> zeros,
                                              std::span<const Polynomial> nonzeros) {
  std::vector<Substitution> subs;
  Conjunction out;
  std::vector<Polynomial> pending(zeros.begin(), zeros.end());
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Polynomial> still_pending;
    for (const auto& p : pending) {
      const Polynomial r = apply_all(p, subs).strip_square_powers();
      if (r.is_zero()) continue;
      if (r.is_constant()) return std::nullopt;
      if (auto solved = r.solve_linear()) {
        for (auto& s : subs) s.value = s.value.substitute(solved->first, solved->second);
        subs.push_back({solved->first, solved->second});
        out.zeros.push_back(r.primitive());
        progress = true;
      } else {
        still_pending.push_back(p);
      }
    }
    pending = std::move(still_pending);
  }
  for (const auto& p : pending) out.zeros.push_back(apply_all(p, subs).strip_square_powers().primitive());
  for (const auto& q : nonzeros) {
    const Polynomial r = apply_all(q, subs).strip_square_powers();
    if (r.is_zero()) return std::nullopt;
    if (r.is_constant()) continue;
    out.nonzeros.push_back(r.primitive());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truth tables and minimal covers

namespace {

// Per atom: 0 = "atom vanishes", 1 = "atom does not vanish", 2 = free.
using Cube = std::vector<std::uint8_t>;

bool cube_contains(const Cube& c, std::uint32_t minterm) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 2) continue;
    const bool zero = (minterm >> i) & 1U;
    if (zero != (c[i] == 0)) return false;
  }
  return true;
}

bool cube_generalizes(const Cube& big, const Cube& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (big[i] != 2 && big[i] != small[i]) return false;
  return true;
}

std::optional<Conjunction> reduce_minterm(std::span<const Polynomial> atoms, std::uint32_t m) {
  std::vector<Polynomial> zeros, nonzeros;
  for (std::size_t i = 0; i < atoms.size(); ++i) ((m >> i) & 1U ? zeros : nonzeros).push_back(atoms[i]);
  return reduce_conjunction(zeros, nonzeros);
}

std::vector<std::size_t> minimum_cover(const std::vector<Cube>& primes, const std::vector<std::uint32_t>& on) {
  auto covers = [&](const std::vector<std::size_t>& chosen) {
    for (auto m : on) {
      bool hit = false;
      for (auto i : chosen) hit = hit || cube_contains(primes[i], m);
      if (!hit) return false;
    }
    return true;
  };
  const std::size_t np = primes.size();
  if (np <= 20) {
    for (std::size_t size = 0; size <= np; ++size) {
      std::vector<std::size_t> chosen;
      std::vector<bool> mask(np, false);
      std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
      // prev_permutation over a true-first mask walks subsets in lexicographic order.
      do {
        chosen.clear();
        for (std::size_t i = 0; i < np; ++i)
          if (mask[i]) chosen.push_back(i);
        if (covers(chosen)) return chosen;
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
  }
  // Greedy fallback for large prime sets.
  std::vector<std::size_t> chosen;
  std::vector<std::uint32_t> left = on;
  while (!left.empty()) {
    std::size_t best = 0, best_hits = 0;
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t hits = 0;
      for (auto m : left) hits += cube_contains(primes[i], m) ? 1 : 0;
      if (hits > best_hits) {
        best = i;
        best_hits = hits;
      }
    }
    chosen.push_back(best);
    std::erase_if(left, [&](std::uint32_t m) { return cube_contains(primes[best], m); });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

ConstructibleSet from_truth_table(std::vector<std::string> vars, std::span<const Polynomial> atoms,
                                  const std::function<bool(std::span<const bool>)>& on) {
  const std::size_t n = atoms.size();
  if (n > 12) throw std::invalid_argument("from_truth_table supports at most 12 atoms");
  const std::uint32_t count = 1U << n;

  enum class State { kOn, kOff, kDontCare };
  std::vector<State> state(count);
  std::vector<std::uint32_t> on_terms;
  std::array<bool, 32> pattern{};
  for (std::uint32_t m = 0; m < count; ++m) {
    if (!reduce_minterm(atoms, m)) {
      state[m] = State::kDontCare;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) pattern[i] = (m >> i) & 1U;
    state[m] = on(std::span<const bool>(pattern.data(), n)) ? State::kOn : State::kOff;
    if (state[m] == State::kOn) on_terms.push_back(m);
  }
  if (on_terms.empty()) return ConstructibleSet::empty(std::move(vars));

  // Enumerate every cube; keep implicants that touch the on-set.
  std::vector<Cube> implicants;
  Cube cube(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      cube[i] = static_cast<std::uint8_t>(c % 3);
      c /= 3;
    }
    bool implicant = true, useful = false;
    for (std::uint32_t m = 0; m < count && implicant; ++m) {
      if (!cube_contains(cube, m)) continue;
      if (state[m] == State::kOff) implicant = false;
      if (state[m] == State::kOn) useful = true;
    }
    if (implicant && useful) implicants.push_back(cube);
  }
  std::vector<Cube> primes;
  for (const auto& c : implicants) {
    bool prime = true;
    for (const auto& d : implicants)
      if (d != c && cube_generalizes(d, c)) prime = false;
    if (prime) primes.push_back(c);
  }
  std::sort(primes.begin(), primes.end());

  using Formula = ConstructibleSet::Formula;
  std::vector<Formula> terms;
  for (auto idx : minimum_cover(primes, on_terms)) {
    std::vector<Polynomial> zeros, nonzeros;
    for (std::size_t i = 0; i < n; ++i) {
      if (primes[idx][i] == 0) zeros.push_back(atoms[i]);
      if (primes[idx][i] == 1) nonzeros.push_back(atoms[i]);
    }
    auto reduced = reduce_conjunction(zeros, nonzeros);
    if (!reduced) continue;
    std::vector<Formula> lits;
    for (const auto& z : reduced->zeros) lits.push_back(Formula::atom(PolyAtom(z)));
    for (const auto& q : reduced->nonzeros) lits.push_back(Formula::negate(Formula::atom(PolyAtom(q))));
    terms.push_back(Formula::conj(lits));
  }
  return ConstructibleSet(std::move(vars), Formula::disj(terms));
}

// ---------------------------------------------------------------------------
// Pattern-based equality

PatternEquivalence decide_equal(const ConstructibleSet& s, const ConstructibleSet& t,
                                std::span<const LabeledPoint> sample) {
  require_same_vars(s, t);
  std::vector<PolyAtom> atoms = s.formula().leaves();
  for (const auto& a : t.formula().leaves())
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  const std::size_t n = atoms.size();
  if (n > 16) throw std::invalid_argument("decide_equal supports at most 16 distinct atoms");

  auto pattern_of = [&](std::span<const Scalar> p) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (atoms[i].poly().evaluate(p).is_zero()) m |= 1U << i;
    return m;
  };
  std::map<std::uint32_t, const LabeledPoint*> witnessed;
  for (const auto& p : sample) witnessed.try_emplace(pattern_of(p.coords), &p);

  PatternEquivalence result;
  result.patterns_witnessed = witnessed.size();
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    ++result.patterns_checked;
    auto holds = [&](const PolyAtom& a) {
      const auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
      return ((m >> i) & 1U) != 0;
    };
    if (s.formula().evaluate(holds) == t.formula().evaluate(holds)) continue;
    if (auto it = witnessed.find(m); it != witnessed.end()) {
      result.verdict = PatternEquivalence::Verdict::kDifferent;
      result.witness = *it->second;
      result.detail = "sets differ at " + it->second->label;
      return result;
    }
    std::vector<Polynomial> zeros, nonzeros;
    for (std::size_t i = 0; i < n; ++i) ((m >> i) & 1U ? zeros : nonzeros).push_back(atoms[i].poly());
    if (!reduce_conjunction(zeros, nonzeros)) {
      ++result.patterns_refuted;
      continue;
    }
    std::ostringstream os;
    os << "zero pattern without witness or refutation:";
    for (std::size_t i = 0; i < n; ++i)
      os << ' ' << atoms[i].poly().to_string(s.vars()) << ((m >> i) & 1U ? " = 0;" : " != 0;");
    result.verdict = PatternEquivalence::Verdict::kInconclusive;
    result.detail = os.str();
    return result;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

constexpr std::string_view kFormulaHeader = "# pervlen-formula v1";
constexpr std::string_view kSampleHeader = "# pervlen-sample v1";

void write_node(std::ostream& os, const ConstructibleSet::Formula& f,
                const std::vector<std::string>& vars, int depth) {
  using Kind = ConstructibleSet::Formula::Kind;
  os << std::string(static_cast<std::size_t>(2 * depth), ' ');
  switch (f.kind()) {
    case Kind::kFalse:
      os << "FALSE\n";
      return;
    case Kind::kTrue:
      os << "TRUE\n";
      return;
    case Kind::kLeaf:
      os << "ZERO " << f.leaf().poly().to_string(vars) << "\n";
      return;
    case Kind::kNot:
      os << "NOT\n";
      break;
    case Kind::kAnd:
      os << "AND\n";
      break;
    case Kind::kOr:
      os << "OR\n";
      break;
  }
  for (const auto& c : f.children()) write_node(os, c, vars, depth + 1);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

struct FormulaLine {
  int line_no;
  int depth;
  std::string body;
};

class FormulaReader {
 public:
  FormulaReader(std::vector<FormulaLine> lines, const std::vector<std::string>& vars)
      : lines_(std::move(lines)), vars_(vars) {}

  ConstructibleSet::Formula read_all() {
    if (lines_.empty()) throw ParseError("formula", "missing formula body");
    auto f = read(0);
    if (pos_ != lines_.size())
      throw ParseError("line " + std::to_string(lines_[pos_].line_no), "unexpected extra node");
    return f;
  }

 private:
  using Formula = ConstructibleSet::Formula;

  Formula read(int depth) {
    const FormulaLine& line = lines_[pos_];
    const std::string where = "line " + std::to_string(line.line_no);
    if (line.depth != depth) throw ParseError(where, "unexpected indentation");
    ++pos_;
    const std::string& b = line.body;
    if (b == "TRUE") return Formula::truth();
    if (b == "FALSE") return Formula::falsity();
    if (b.rfind("ZERO ", 0) == 0) {
      Polynomial p;
      try {
        p = Polynomial::parse(std::string_view(b).substr(5), vars_);
      } catch (const ParseError& e) {
        throw ParseError(where, e.what());
      }
      if (p.is_constant()) throw ParseError(where, "atom polynomial is constant");
      return Formula::atom(PolyAtom(p));
    }
    std::vector<Formula> kids;
    while (pos_ < lines_.size() && lines_[pos_].depth > depth) kids.push_back(read(depth + 1));
    if (b == "NOT") {
      if (kids.size() != 1) throw ParseError(where, "NOT takes exactly one operand");
      return Formula::negate(kids[0]);
    }
    if (b == "AND") return Formula::conj(kids);
    if (b == "OR") return Formula::disj(kids);
    throw ParseError(where, "unknown node '" + b + "'");
  }

  std::vector<FormulaLine> lines_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const ConstructibleSet& s) {
  std::ostringstream os;
  os << kFormulaHeader << "\nvars";
  for (const auto& v : s.vars()) os << ' ' << v;
  os << '\n';
  write_node(os, s.formula(), s.vars(), 0);
  return os.str();
}

ConstructibleSet parse_constructible_set(std::string_view text) {
  const auto lines = split_lines(text);
  std::optional<std::vector<std::string>> vars;
  std::vector<FormulaLine> body;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& raw = lines[i];
    const auto first = raw.find_first_not_of(' ');
    if (first == std::string::npos || raw[first] == '#') continue;
    const int line_no = static_cast<int>(i + 1);
    if (!vars) {
      auto words = split_ws(raw);
      if (words.empty() || words[0] != "vars")
        throw ParseError("line " + std::to_string(line_no), "expected 'vars' line");
      vars.emplace(words.begin() + 1, words.end());
      continue;
    }
    if (first % 2 != 0) throw ParseError("line " + std::to_string(line_no), "odd indentation");
    std::string b = raw.substr(first);
    while (!b.empty() && (b.back() == ' ' || b.back() == '\t')) b.pop_back();
    body.push_back({line_no, static_cast<int>(first / 2), std::move(b)});
  }
  if (!vars) throw ParseError("formula", "missing 'vars' line");
  FormulaReader reader(std::move(body), *vars);
  auto f = reader.read_all();
  return ConstructibleSet(*vars, std::move(f));
}

namespace {

std::string atom_notation(const Polynomial& p, const std::vector<std::string>& vars, bool zero) {
  const char* eq = zero ? "=" : "≠";
  if (p.total_degree() == 1) {
    // Two-term linear forms: "v=c" or "v=w".
    const auto& terms = p.terms();
    if (terms.size() == 2) {
      auto it = terms.begin();
      const auto& [m1, c1] = *it;
      const auto& [m2, c2] = *std::next(it);
      const auto var_of = [&](const Monomial& m) {
        return static_cast<std::size_t>(std::find(m.begin(), m.end(), 1U) - m.begin());
      };
      const unsigned d2 = std::accumulate(m2.begin(), m2.end(), 0U);
      if (c1 == 1 && d2 == 0) return vars[var_of(m1)] + eq + mpq_class(-c2).get_str();
      if (c1 == 1 && c2 == -1) return vars[var_of(m1)] + eq + vars[var_of(m2)];
    }
  }
  return p.to_string(vars) + eq + "0";
}

// Literals of a conjunction, or nullopt if f is not one.
std::optional<std::vector<std::pair<Polynomial, bool>>> as_conjunction(const ConstructibleSet::Formula& f) {
  using Kind = ConstructibleSet::Formula::Kind;
  std::vector<std::pair<Polynomial, bool>> lits;
  auto literal = [&](const ConstructibleSet::Formula& g) {
    if (g.kind() == Kind::kLeaf) {
      lits.emplace_back(g.leaf().poly(), true);
      return true;
    }
    if (g.kind() == Kind::kNot && g.children()[0].kind() == Kind::kLeaf) {
      lits.emplace_back(g.children()[0].leaf().poly(), false);
      return true;
    }
    return false;
  };
  if (f.kind() == Kind::kAnd) {
    for (const auto& c : f.children())
      if (!literal(c)) return std::nullopt;
    return lits;
  }
  if (!literal(f)) return std::nullopt;
  return lits;
}

std::string generic_notation(const ConstructibleSet::Formula& f, const std::vector<std::string>& vars) {
  using Kind = ConstructibleSet::Formula::Kind;
  switch (f.kind()) {
    case Kind::kFalse:
      return "∅";
    case Kind::kTrue:
      return "C^" + std::to_string(vars.size());
    case Kind::kLeaf:
      return "{" + atom_notation(f.leaf().poly(), vars, true) + "}";
    case Kind::kNot:
      return "∁" + generic_notation(f.children()[0], vars);
    case Kind::kAnd:
    case Kind::kOr: {
      std::string out = "(";
      const char* sep = f.kind() == Kind::kAnd ? " ∩ " : " ∪ ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += sep;
        first = false;
        out += generic_notation(c, vars);
      }
      return out + ")";
    }
  }
  return "";
}

}  // namespace

std::string to_set_notation(const ConstructibleSet& s) {
  using Kind = ConstructibleSet::Formula::Kind;
  const auto& f = s.formula();
  const auto& vars = s.vars();
  if (f.kind() == Kind::kFalse) return "∅";
  if (f.kind() == Kind::kTrue) return "C^" + std::to_string(vars.size());
  std::vector<ConstructibleSet::Formula> parts;
  if (f.kind() == Kind::kOr) {
    parts.assign(f.children().begin(), f.children().end());
  } else {
    parts.push_back(f);
  }
  std::string out;
  for (const auto& part : parts) {
    auto lits = as_conjunction(part);
    if (!lits) return generic_notation(f, vars);
    // A conjunction fixing every coordinate to a constant is a point.
    std::vector<std::optional<std::string>> coords(vars.size());
    bool is_point = lits->size() == vars.size();
    for (const auto& [p, zero] : *lits) {
      if (!zero || p.total_degree() != 1 || p.terms().size() > 2) {
        is_point = false;
        break;
      }
      auto solved = p.solve_linear();
      if (!solved->second.is_constant()) {
        is_point = false;
        break;
      }
      const mpq_class c = solved->second.is_zero() ? mpq_class(0) : solved->second.leading_coeff();
      coords[solved->first] = c.get_str();
    }
    if (!out.empty()) out += " ∪ ";
    if (is_point && std::all_of(coords.begin(), coords.end(), [](const auto& c) { return c.has_value(); })) {
      out += "{(";
      for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? "," : "") + *coords[i];
      out += ")}";
      continue;
    }
    out += "{";
    for (std::size_t i = 0; i < lits->size(); ++i)
      out += (i ? ", " : "") + atom_notation((*lits)[i].first, vars, (*lits)[i].second);
    out += "}";
  }
  return out;
}

std::string sample_to_text(std::span<const std::string> vars, std::span<const LabeledPoint> sample) {
  std::ostringstream os;
  os << kSampleHeader << "\nvars";
  for (const auto& v : vars) os << ' ' << v;
  os << '\n';
  for (const auto& p : sample) {
    os << p.label;
    for (const auto& c : p.coords) os << '\t' << c.to_string();
    os << '\n';
  }
  return os.str();
}

std::vector<LabeledPoint> parse_sample(std::string_view text, std::vector<std::string>* vars_out) {
  const auto lines = split_lines(text);
  std::optional<std::vector<std::string>> vars;
  std::vector<LabeledPoint> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& raw = lines[i];
    if (raw.empty() || raw[0] == '#') continue;
    const std::string where = "line " + std::to_string(i + 1);
    if (!vars) {
      auto words = split_ws(raw);
      if (words.empty() || words[0] != "vars") throw ParseError(where, "expected 'vars' line");
      vars.emplace(words.begin() + 1, words.end());
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = raw.find('\t', start);
      fields.push_back(raw.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != vars->size() + 1)
      throw ParseError(where, "expected label and " + std::to_string(vars->size()) + " coordinates");
    LabeledPoint p;
    p.label = fields[0];
    for (std::size_t k = 1; k < fields.size(); ++k) {
      try {
        p.coords.push_back(Scalar::parse(fields[k]));
      } catch (const ParseError& e) {
        throw ParseError(where, e.what());
      }
    }
    out.push_back(std::move(p));
  }
  if (!vars) throw ParseError("sample", "missing 'vars' line");
  if (vars_out) *vars_out = *vars;
  return out;
}

}  // namespace pervlen
