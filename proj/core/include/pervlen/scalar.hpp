#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pervlen {

/*
 * Exact element a + b*sqrt(d) of Q or of a quadratic field Q(sqrt(d)).
 *
 * Canonical form:
 *   - d is square-free and d != 1, or d == 0 for a plain rational;
 *   - b == 0 implies d == 0, so every rational has exactly one encoding.
 *
 * With this normalization two Scalars are equal iff their fields are
 * equal, which makes == a syntactic comparison. Arithmetic between two
 * elements whose nonzero discriminants differ throws FieldMismatch.
 */
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class v) : a_(std::move(v)) { a_.canonicalize(); }  // NOLINT

  // a + b*sqrt(d) for an arbitrary integer d; d is reduced to its
  // square-free part and perfect squares collapse to rationals.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, const mpz_class& d);

  // sqrt(d) for an integer d.
  static Scalar sqrt_of(const mpz_class& d) { return quadratic(0, 1, d); }

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& radical_coeff() const noexcept { return b_; }
  std::int64_t disc() const noexcept { return d_; }

  bool is_rational() const noexcept { return d_ == 0; }
  bool is_zero() const noexcept { return d_ == 0 && sgn(a_) == 0; }
  bool is_one() const noexcept { return d_ == 0 && a_ == 1; }

  // Galois conjugate a - b*sqrt(d).
  Scalar conj() const;
  // Field norm a^2 - d*b^2.
  mpq_class norm() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  // Throws std::domain_error on division by zero.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }

  friend bool operator==(const Scalar& l, const Scalar& r) {
    return l.d_ == r.d_ && l.a_ == r.a_ && l.b_ == r.b_;
  }

  // "p/q" for rationals, "p/q+r/s*sqrt(d)" otherwise.
  std::string to_string() const;
  // Inverse of to_string; also accepts "sqrt(d)", "-r*sqrt(d)" and
  // non-square-free d. Throws ParseError.
  static Scalar parse(std::string_view text);

 private:
  void normalize();

  mpq_class a_{0};
  mpq_class b_{0};
  std::int64_t d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Common field of two scalars (0 when both are rational). Throws
// FieldMismatch when they live in two distinct quadratic fields.
std::int64_t common_disc(const Scalar& l, const Scalar& r);
std::int64_t common_disc(std::int64_t l, std::int64_t r);

// Square root of `s` inside Q(sqrt(s.disc())) when s is irrational, or in
// Q / the quadratic field Q(sqrt(s)) when s is rational. Empty when s is
// irrational and not a square in its own field.
std::optional<Scalar> sqrt_in_field(const Scalar& s);

// Total order on canonical encodings, for deterministic sorting only.
bool canonical_less(const Scalar& l, const Scalar& r);

// Square-free part of a nonzero integer, sign included: n = f^2 * result.
mpz_class squarefree_part(const mpz_class& n);

}  // namespace pervlen
