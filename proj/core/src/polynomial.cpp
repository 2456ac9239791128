#include "pervlen/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "pervlen/error.hpp"

namespace pervlen {

// ---------------------------------------------------------------------------
// RadicalSum

RadicalSum::RadicalSum(const Scalar& s) {
  add_term(1, s.rational_part());
  if (!s.is_rational()) add_term(s.disc(), s.radical_coeff());
}

RadicalSum::RadicalSum(const mpq_class& q) { add_term(1, q); }

void RadicalSum::add_term(std::int64_t key, const mpq_class& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Scalar RadicalSum::to_scalar() const {
  Scalar out;
  for (const auto& [key, coeff] : terms_) {
    if (key == 1) {
      out += Scalar(coeff);
    } else {
      try {
        out += Scalar::quadratic(0, coeff, key);
      } catch (const FieldMismatch&) {
        throw Unrepresentable("value needs more than one quadratic extension");
      }
    }
  }
  return out;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const auto& [key, coeff] : o.terms_) add_term(key, coeff);
  return *this;
}

RadicalSum& RadicalSum::operator*=(const RadicalSum& o) {
  RadicalSum out;
  for (const auto& [s, cs] : terms_) {
    for (const auto& [t, ct] : o.terms_) {
      // sqrt(s)*sqrt(t) = i^[s<0] i^[t<0] sqrt(|s|) sqrt(|t|)
      const std::int64_t as = s < 0 ? -s : s;
      const std::int64_t at = t < 0 ? -t : t;
      const std::int64_t g = std::gcd(as, at);
      const std::int64_t m = (as / g) * (at / g);
      mpq_class coeff = cs * ct * g;
      std::int64_t key = m;
      const int imaginary = (s < 0 ? 1 : 0) + (t < 0 ? 1 : 0);
      if (imaginary == 2) coeff = -coeff;
      if (imaginary == 1) key = -m;
      out.add_term(key, coeff);
    }
  }
  *this = std::move(out);
  return *this;
}

// ---------------------------------------------------------------------------
// Polynomial

bool GrlexGreater::operator()(const Monomial& l, const Monomial& r) const {
  const unsigned dl = std::accumulate(l.begin(), l.end(), 0U);
  const unsigned dr = std::accumulate(r.begin(), r.end(), 0U);
  if (dl != dr) return dl > dr;
  return l > r;
}

Polynomial Polynomial::constant(std::size_t nvars, const mpq_class& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index");
  Polynomial p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const Monomial& m = leading_monomial();
  return static_cast<int>(std::accumulate(m.begin(), m.end(), 0U));
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  Polynomial out(nvars_);
  for (const auto& [ml, cl] : terms_) {
    for (const auto& [mr, cr] : o.terms_) {
      Monomial m(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = ml[i] + mr[i];
      out.add_term(m, cl * cr);
    }
  }
  *this = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out = constant(nvars_, 1);
  for (unsigned i = 0; i < e; ++i) out *= *this;
  return out;
}

Polynomial Polynomial::substitute(std::size_t index, const Polynomial& value) const {
  if (value.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const unsigned e = rest[index];
    rest[index] = 0;
    Polynomial term(nvars_);
    term.add_term(rest, c);
    out += term * value.pow(e);
  }
  return out;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_class num_gcd = 0;
  for (const auto& [m, c] : terms_) {
    mpz_class n = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  mpq_class scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(leading_coeff()) < 0) scale = -scale;
  Polynomial p = *this;
  p *= scale;
  return p;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial p = *this;
  p *= mpq_class(1 / leading_coeff());
  return p;
}

namespace {

std::optional<mpq_class> exact_rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  return mpq_class(n, d);
}

}  // namespace

std::optional<Polynomial> Polynomial::sqrt() const {
  if (terms_.empty()) return *this;
  // lt(q^2) = lt(q)^2 in any monomial order; peel q off term by term.
  Monomial lead = leading_monomial();
  for (auto& e : lead) {
    if (e % 2 != 0) return std::nullopt;
    e /= 2;
  }
  const auto lc = exact_rational_sqrt(leading_coeff());
  if (!lc) return std::nullopt;
  Polynomial root(nvars_);
  root.add_term(lead, *lc);
  const mpq_class twice_lc = 2 * *lc;
  for (int guard = 0; guard < 100000; ++guard) {
    const Polynomial rest = *this - root * root;
    if (rest.is_zero()) return root;
    Monomial m = rest.leading_monomial();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] < lead[i]) return std::nullopt;
      m[i] -= lead[i];
    }
    if (!GrlexGreater{}(lead, m)) return std::nullopt;
    root.add_term(m, rest.leading_coeff() / twice_lc);
  }
  return std::nullopt;
}

Polynomial Polynomial::strip_square_powers() const {
  Polynomial p = monic();
  while (p.total_degree() > 0) {
    auto r = p.sqrt();
    if (!r) break;
    p = r->monic();
  }
  return p;
}

std::optional<std::pair<std::size_t, Polynomial>> Polynomial::solve_linear() const {
  if (total_degree() != 1) return std::nullopt;
  const Monomial& lead = leading_monomial();
  const std::size_t v = static_cast<std::size_t>(std::find(lead.begin(), lead.end(), 1U) - lead.begin());
  // p = c*x_v + rest  =>  x_v = -rest / c
  Polynomial rest = *this;
  const mpq_class c = leading_coeff();
  rest.terms_.erase(rest.terms_.begin());
  rest *= mpq_class(-1 / c);
  return std::make_pair(v, std::move(rest));
}

RadicalSum Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("point dimension does not match variables");
  std::vector<RadicalSum> coords;
  coords.reserve(nvars_);
  for (const auto& s : point) coords.emplace_back(s);
  RadicalSum total;
  for (const auto& [m, c] : terms_) {
    RadicalSum term(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) term *= coords[i];
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw std::invalid_argument("name count does not match variables");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const mpq_class mag = abs(c);
    std::string factors;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[i];
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "'", what + " at offset " + std::to_string(pos_));
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial base = primary();
    if (accept('^')) {
      const mpz_class e = natural();
      if (!e.fits_uint_p()) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_ws();
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const mpz_class num = natural();
      mpz_class den = 1;
      if (accept('/')) den = natural();
      if (den == 0) fail("zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return Polynomial::constant(names_.size(), q);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view ident = text_.substr(start, pos_ - start);
    if (ident.empty()) fail("expected number, variable or '('");
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == ident) return Polynomial::variable(names_.size(), i);
    pos_ = start;
    fail("unknown variable '" + std::string(ident) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).run();
}

}  // namespace pervlen
