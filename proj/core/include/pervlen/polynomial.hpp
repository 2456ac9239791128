#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pervlen/scalar.hpp"

namespace pervlen {

/*
 * Finite Q-linear combination of square roots of square-free integers,
 * sum_s c_s * sqrt(s) with sqrt(s) = i*sqrt(|s|) for s < 0 and key 1 for
 * the rational part. Square roots of distinct square-free integers are
 * linearly independent over Q, so the value is zero iff every coefficient
 * is zero. Used to evaluate polynomials at points whose coordinates live
 * in different quadratic fields.
 */
class RadicalSum {
 public:
  RadicalSum() = default;
  explicit RadicalSum(const Scalar& s);
  explicit RadicalSum(const mpq_class& q);

  bool is_zero() const noexcept { return terms_.empty(); }
  // The value as a Scalar; throws Unrepresentable when more than one
  // nontrivial radical survives.
  Scalar to_scalar() const;

  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator*=(const RadicalSum& o);
  friend RadicalSum operator+(RadicalSum l, const RadicalSum& r) { return l += r; }
  friend RadicalSum operator*(RadicalSum l, const RadicalSum& r) { return l *= r; }

 private:
  void add_term(std::int64_t key, const mpq_class& coeff);

  std::map<std::int64_t, mpq_class> terms_;
};

using Monomial = std::vector<unsigned>;

// Graded lexicographic order, variable 0 largest. Sorts larger monomials first.
struct GrlexGreater {
  bool operator()(const Monomial& l, const Monomial& r) const;
};

// Multivariate polynomial with rational coefficients in a fixed number of
// variables, terms kept in descending grlex order.
class Polynomial {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexGreater>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const mpq_class& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const mpq_class& leading_coeff() const { return terms_.begin()->second; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const mpq_class& c);
  friend Polynomial operator+(Polynomial l, const Polynomial& r) { return l += r; }
  friend Polynomial operator-(Polynomial l, const Polynomial& r) { return l -= r; }
  friend Polynomial operator*(Polynomial l, const Polynomial& r) { return l *= r; }
  friend Polynomial operator*(Polynomial l, const mpq_class& c) { return l *= c; }
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& l, const Polynomial& r) {
    return l.nvars_ == r.nvars_ && l.terms_ == r.terms_;
  }

  // Replace variable `index` by `value`.
  Polynomial substitute(std::size_t index, const Polynomial& value) const;

  // Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;
  Polynomial monic() const;

  // q with q*q == *this, if one exists.
  std::optional<Polynomial> sqrt() const;
  // Repeatedly replace p by sqrt(monic(p)) while p is a perfect square.
  Polynomial strip_square_powers() const;

  // For total degree 1: (v, r) such that p = 0 <=> x_v = r, where x_v is
  // the leading variable and r does not involve x_v.
  std::optional<std::pair<std::size_t, Polynomial>> solve_linear() const;

  RadicalSum evaluate(std::span<const Scalar> point) const;

  std::string to_string(std::span<const std::string> names) const;
  // Accepts sums of terms like "-3/2*x^2*y", "x*y*z", "4". Throws ParseError.
  static Polynomial parse(std::string_view text, std::span<const std::string> names);

 private:
  void add_term(const Monomial& m, const mpq_class& c);

  std::size_t nvars_;
  Terms terms_;
};

}  // namespace pervlen
