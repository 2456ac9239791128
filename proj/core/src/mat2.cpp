#include "pervlen/mat2.hpp"

#include <stdexcept>
#include <vector>

#include "pervlen/error.hpp"

namespace pervlen {

bool Mat2::is_rational() const {
  for (const auto& s : e_)
    if (!s.is_rational()) return false;
  return true;
}

bool Mat2::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

std::int64_t Mat2::disc() const {
  std::int64_t d = 0;
  for (const auto& s : e_) d = common_disc(d, s.disc());
  return d;
}

Mat2 Mat2::inverse() const {
  const Scalar det = this->det();
  if (det.is_zero()) throw std::domain_error("singular matrix");
  return Mat2(e_[3] / det, -e_[1] / det, -e_[2] / det, e_[0] / det);
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return Mat2(e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2], e_[3] - o.e_[3]);
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return Mat2(e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2], e_[3] + o.e_[3]);
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return Mat2(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
              e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
}

Vec2 Mat2::operator*(const Vec2& v) const {
  return {e_[0] * v[0] + e_[1] * v[1], e_[2] * v[0] + e_[3] * v[1]};
}

std::string Mat2::to_string() const {
  return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() +
         ", " + e_[3].to_string() + "]]";
}

bool parallel(const Vec2& u, const Vec2& v) { return (u[0] * v[1] - u[1] * v[0]).is_zero(); }

Vec2 normalize_line(const Vec2& v) {
  if (!v[0].is_zero()) return {Scalar(1), v[1] / v[0]};
  if (!v[1].is_zero()) return {Scalar(0), Scalar(1)};
  throw std::invalid_argument("zero vector has no line");
}

std::pair<Scalar, Scalar> char_roots(const Mat2& m) {
  if (!m.is_rational()) throw std::invalid_argument("char_roots needs rational entries");
  if (!m.det().is_one()) throw std::invalid_argument("char_roots needs det = 1");
  const Scalar tr = m.trace();
  const Scalar root = *sqrt_in_field(tr * tr - Scalar(4));
  const Scalar half(mpq_class(1, 2));
  return {(tr + root) * half, (tr - root) * half};
}

int eig1_multiplicity(const Mat2& m) {
  const Mat2 shifted = m - Mat2::identity();
  if (shifted.is_zero()) return 2;
  return shifted.det().is_zero() ? 1 : 0;
}

Scalar eigenvalue_on(const Mat2& m, const Vec2& v) {
  const Vec2 image = m * v;
  if (!v[0].is_zero()) return image[0] / v[0];
  return image[1] / v[1];
}

namespace {

// Eigenvector of a non-scalar m for its eigenvalue lambda.
Vec2 eigenvector_for(const Mat2& m, const Scalar& lambda) {
  if (!m(0, 1).is_zero()) return normalize_line({m(0, 1), lambda - m(0, 0)});
  if (!m(1, 0).is_zero()) return normalize_line({lambda - m(1, 1), m(1, 0)});
  // Diagonal, non-scalar.
  if (lambda == m(0, 0)) return {Scalar(1), Scalar(0)};
  return {Scalar(0), Scalar(1)};
}

bool commutes_on_a_line(const Mat2& a, const Mat2& b) {
  // Two 2x2 matrices share an eigenvector iff det(ab - ba) = 0.
  return (a * b - b * a).det().is_zero();
}

}  // namespace

namespace {

std::vector<Vec2> eigenlines_over(const Mat2& m, std::int64_t field) {
  if (m.is_scalar()) throw std::invalid_argument("every line is an eigenline of a scalar matrix");
  const Scalar tr = m.trace();
  const Scalar disc = tr * tr - Scalar(4) * m.det();
  std::optional<Scalar> root = sqrt_in_field(disc);
  if (!root || (field != 0 && root->disc() != 0 && root->disc() != field))
    throw Unrepresentable("eigenlines need a second quadratic extension");
  const Scalar half(mpq_class(1, 2));
  std::vector<Vec2> lines{eigenvector_for(m, (tr + *root) * half)};
  if (!root->is_zero()) lines.push_back(eigenvector_for(m, (tr - *root) * half));
  return lines;
}

}  // namespace

std::vector<Vec2> eigenlines(const Mat2& m) { return eigenlines_over(m, m.disc()); }

std::optional<Vec2> common_eigenvector(std::span<const Mat2> mats) {
  std::int64_t field = 0;
  for (const auto& m : mats) {
    if (m.det().is_zero()) throw std::invalid_argument("common_eigenvector needs invertible matrices");
    field = common_disc(field, m.disc());
  }

  const Mat2* pivot = nullptr;
  for (const auto& m : mats) {
    if (!m.is_scalar()) {
      pivot = &m;
      break;
    }
  }
  if (pivot == nullptr) return Vec2{Scalar(1), Scalar(0)};

  std::vector<Vec2> candidates;
  try {
    candidates = eigenlines_over(*pivot, field);
  } catch (const Unrepresentable&) {
    // The eigenlines of the pivot are Galois conjugate over the entry field,
    // so any other matrix fixing one of them fixes both.
    for (const auto& m : mats)
      if (!commutes_on_a_line(*pivot, m)) return std::nullopt;
    throw;
  }

  for (const auto& v : candidates) {
    bool shared = true;
    for (const auto& m : mats) {
      if (!parallel(v, m * v)) {
        shared = false;
        break;
      }
    }
    if (shared) return v;
  }
  return std::nullopt;
}

std::optional<Vec2> common_eigenvector(const Mat2& a, const Mat2& b) {
  const std::array<Mat2, 2> mats{a, b};
  return common_eigenvector(std::span<const Mat2>(mats));
}

}  // namespace pervlen
