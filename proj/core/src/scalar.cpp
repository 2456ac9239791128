#include "pervlen/scalar.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "pervlen/error.hpp"

namespace pervlen {

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part of zero");
  mpz_class m = abs(n);
  mpz_class result = 1;
  // Strip every prime p with p^3 <= m; what remains has at most two prime
  // factors, so it is either square-free or a perfect square.
  for (mpz_class p = 2; p * p * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  if (!mpz_perfect_square_p(m.get_mpz_t())) result *= m;
  return sgn(n) < 0 ? mpz_class(-result) : result;
}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, const mpz_class& d) {
  Scalar s;
  s.a_ = a;
  s.a_.canonicalize();
  if (sgn(b) == 0 || d == 0) {
    s.normalize();
    return s;
  }
  mpz_class sf = squarefree_part(d);
  // d = f^2 * sf
  mpz_class f2 = d / sf;
  mpz_class f;
  mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
  mpq_class coeff = b * mpq_class(f);
  coeff.canonicalize();
  if (sf == 1) {
    s.a_ += coeff;
  } else {
    if (!sf.fits_slong_p()) throw std::overflow_error("discriminant exceeds 64 bits");
    s.b_ = coeff;
    s.d_ = sf.get_si();
  }
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
  if (d_ == 0) b_ = 0;
}

Scalar Scalar::conj() const {
  Scalar s = *this;
  s.b_ = -s.b_;
  return s;
}

mpq_class Scalar::norm() const {
  mpq_class r = a_ * a_ - mpq_class(d_) * b_ * b_;
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.a_ = -s.a_;
  s.b_ = -s.b_;
  return s;
}

std::int64_t common_disc(std::int64_t l, std::int64_t r) {
  if (l == 0) return r;
  if (r == 0 || r == l) return l;
  std::ostringstream os;
  os << "operands live in Q(sqrt(" << l << ")) and Q(sqrt(" << r << "))";
  throw FieldMismatch(os.str());
}

std::int64_t common_disc(const Scalar& l, const Scalar& r) { return common_disc(l.disc(), r.disc()); }

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = common_disc(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = common_disc(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  const std::int64_t d = common_disc(*this, o);
  mpq_class a = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  common_disc(*this, o);
  // x / y = x * conj(y) / N(y); N(y) != 0 because d is not a square.
  const mpq_class n = o.norm();
  *this *= o.conj();
  a_ /= n;
  b_ /= n;
  normalize();
  return *this;
}

std::string Scalar::to_string() const {
  std::string out = a_.get_str();
  if (d_ == 0) return out;
  const std::string coeff = b_.get_str();
  if (coeff.front() != '-') out += '+';
  out += coeff;
  out += "*sqrt(" + std::to_string(d_) + ")";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {

class ScalarLexer {
 public:
  explicit ScalarLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") fail("expected integer");
    if (digits.front() == '+') digits.erase(0, 1);
    return mpz_class(digits);
  }
  // Unsigned rational p or p/q.
  mpq_class rational() {
    mpz_class num = integer();
    mpz_class den = 1;
    if (accept('/')) den = integer();
    if (den == 0) fail("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar '" + std::string(text_) + "'",
                     what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  ScalarLexer lx(text);
  Scalar result;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept('+')) {
    } else if (lx.accept('-')) {
      sign = -1;
    } else if (!first) {
      lx.fail("expected '+' or '-'");
    }
    mpq_class coeff = 1;
    bool have_coeff = false;
    if (lx.at_digit()) {
      coeff = lx.rational();
      have_coeff = true;
    }
    Scalar term;
    if (have_coeff && !lx.peek('*')) {
      term = Scalar(coeff);
    } else {
      if (have_coeff && !lx.accept('*')) lx.fail("expected '*'");
      if (!lx.accept_word("sqrt")) lx.fail("expected rational or sqrt(d)");
      if (!lx.accept('(')) lx.fail("expected '('");
      mpz_class d = lx.integer();
      if (!lx.accept(')')) lx.fail("expected ')'");
      term = quadratic(0, coeff, d);
    }
    if (sign < 0) term = -term;
    try {
      result += term;
    } catch (const FieldMismatch& e) {
      lx.fail(e.what());
    }
    first = false;
  }
  if (first) lx.fail("empty scalar");
  return result;
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

}  // namespace

std::optional<Scalar> sqrt_in_field(const Scalar& s) {
  if (s.is_rational()) {
    // sqrt(p/q) = sqrt(p*q) / q
    const mpq_class& r = s.rational_part();
    if (sgn(r) == 0) return Scalar();
    return Scalar::quadratic(0, mpq_class(1, r.get_den()), r.get_num() * r.get_den());
  }
  // (u + v sqrt(d))^2 = a + b sqrt(d)  <=>  u^2 + d v^2 = a, 2uv = b.
  // Then u^2 = (a +- sqrt(a^2 - d b^2)) / 2.
  const mpq_class& a = s.rational_part();
  const mpq_class& b = s.radical_coeff();
  const auto n = rational_sqrt(s.norm());
  if (!n) return std::nullopt;
  for (const mpq_class& cand : {mpq_class((a + *n) / 2), mpq_class((a - *n) / 2)}) {
    if (sgn(cand) == 0) continue;
    if (auto u = rational_sqrt(cand)) {
      mpq_class v = b / (2 * *u);
      Scalar root = Scalar::quadratic(*u, v, s.disc());
      if (root * root == s) return root;
    }
  }
  return std::nullopt;
}

bool canonical_less(const Scalar& l, const Scalar& r) {
  if (l.disc() != r.disc()) return l.disc() < r.disc();
  if (l.rational_part() != r.rational_part()) return l.rational_part() < r.rational_part();
  return l.radical_coeff() < r.radical_coeff();
}

}  // namespace pervlen
