#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pervlen/scalar.hpp"

namespace pervlen {

using Vec2 = std::array<Scalar, 2>;

// 2x2 matrix over Q or a single Q(sqrt(d)), row-major.
class Mat2 {
 public:
  Mat2() = default;
  Mat2(Scalar a, Scalar b, Scalar c, Scalar d) : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Mat2 identity() { return Mat2(1, 0, 0, 1); }
  static Mat2 diagonal(const Scalar& p, const Scalar& q) { return Mat2(p, 0, 0, q); }

  const Scalar& operator()(int row, int col) const { return e_[2 * row + col]; }

  Scalar trace() const { return e_[0] + e_[3]; }
  Scalar det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

  bool is_rational() const;
  bool is_scalar() const { return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3]; }
  bool is_zero() const;
  // Field of definition of the entries (0 for Q). Throws FieldMismatch.
  std::int64_t disc() const;

  Mat2 transpose() const { return Mat2(e_[0], e_[2], e_[1], e_[3]); }
  // Throws std::domain_error when singular.
  Mat2 inverse() const;

  Mat2 operator-(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  Vec2 operator*(const Vec2& v) const;

  friend bool operator==(const Mat2& l, const Mat2& r) { return l.e_ == r.e_; }

  std::string to_string() const;

 private:
  std::array<Scalar, 4> e_{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
};

// True when u and v are linearly dependent.
bool parallel(const Vec2& u, const Vec2& v);

// Scale v so that its first nonzero coordinate is 1.
Vec2 normalize_line(const Vec2& v);

// Eigenvalues (lambda, 1/lambda) of a rational SL2 matrix, the first being
// (tr + sqrt(tr^2 - 4)) / 2. Throws std::invalid_argument on irrational
// entries or det != 1.
std::pair<Scalar, Scalar> char_roots(const Mat2& m);

// dim ker(m - I): the number of Jordan blocks of m with eigenvalue 1.
int eig1_multiplicity(const Mat2& m);

// Eigenlines of a non-scalar matrix, each with first nonzero coordinate 1,
// ordered by eigenvalue (tr + sqrt(disc)) / 2 first. Throws Unrepresentable
// when they are not defined over the field of the entries (or over a
// quadratic extension of Q, for rational entries).
std::vector<Vec2> eigenlines(const Mat2& m);

// A nonzero vector that is an eigenvector of every matrix in `mats`, with
// first nonzero coordinate 1, or nullopt when none exists. All matrices must
// be invertible. Searches eigenlines over the splitting field of the first
// non-scalar matrix.
//
// Throws Unrepresentable if a common eigenline exists but is only defined
// over a degree-4 field (possible only for entries already in Q(sqrt(d))).
std::optional<Vec2> common_eigenvector(std::span<const Mat2> mats);
std::optional<Vec2> common_eigenvector(const Mat2& a, const Mat2& b);

// c with m*v = c*v, for an eigenvector v of m.
Scalar eigenvalue_on(const Mat2& m, const Vec2& v);

}  // namespace pervlen
