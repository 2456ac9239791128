#include "pervlen/lattice.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace pervlen {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t j = 0; j < o.cols_; ++j)
        out(i, j) = checked_add(out(i, j), checked_mul((*this)(i, k), o(k, j)));
  return out;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::stacked(const IntMatrix& o) const {
  if (rows_ != 0 && o.rows_ != 0 && cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(rows_ + o.rows_, rows_ != 0 ? cols_ : o.cols_);
  out.e_ = e_;
  out.e_.insert(out.e_.end(), o.e_.begin(), o.e_.end());
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<std::int64_t> SmithForm::divisors() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

namespace {

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : d_(m), u_(IntMatrix::identity(m.rows())), v_(IntMatrix::identity(m.cols())),
        vinv_(IntMatrix::identity(m.cols())) {}

  SmithForm run() {
    const std::size_t steps = std::min(d_.rows(), d_.cols());
    std::size_t t = 0;
    for (; t < steps; ++t) {
      if (!reduce_at(t)) break;
      if (d_(t, t) < 0) negate_row(t);
    }
    return {std::move(u_), std::move(d_), std::move(v_), std::move(vinv_), t};
  }

 private:
  // Clear row and column t around a pivot dividing the rest of the block.
  // Returns false when the remaining block is zero.
  bool reduce_at(std::size_t t) {
    for (;;) {
      std::size_t pr = 0, pc = 0;
      std::int64_t best = 0;
      for (std::size_t i = t; i < d_.rows(); ++i)
        for (std::size_t j = t; j < d_.cols(); ++j) {
          const std::int64_t a = std::llabs(d_(i, j));
          if (a != 0 && (best == 0 || a < best)) {
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (best == 0) return false;
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      const std::int64_t p = d_(t, t);
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        const std::int64_t q = d_(i, t) / p;
        if (q != 0) add_row(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        const std::int64_t q = d_(t, j) / p;
        if (q != 0) add_col(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < d_.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d_.cols(); ++j)
          if (d_(i, j) % p != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return true;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d_.cols(); ++j) std::swap(d_(a, j), d_(b, j));
    for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(a, j), u_(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d_.rows(); ++i) std::swap(d_(i, a), d_(i, b));
    for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, a), v_(i, b));
    for (std::size_t j = 0; j < vinv_.cols(); ++j) std::swap(vinv_(a, j), vinv_(b, j));
  }

  // row[target] += f * row[source]
  void add_row(std::size_t target, std::size_t source, std::int64_t f) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(target, j) = checked_add(d_(target, j), checked_mul(f, d_(source, j)));
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(target, j) = checked_add(u_(target, j), checked_mul(f, u_(source, j)));
  }

  // col[target] += f * col[source]; V^-1 picks up the inverse row operation.
  void add_col(std::size_t target, std::size_t source, std::int64_t f) {
    for (std::size_t i = 0; i < d_.rows(); ++i) d_(i, target) = checked_add(d_(i, target), checked_mul(f, d_(i, source)));
    for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, target) = checked_add(v_(i, target), checked_mul(f, v_(i, source)));
    for (std::size_t j = 0; j < vinv_.cols(); ++j)
      vinv_(source, j) = checked_add(vinv_(source, j), checked_mul(-f, vinv_(target, j)));
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(r, j) = -d_(r, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(r, j) = -u_(r, j);
  }

  IntMatrix d_, u_, v_, vinv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) { return SmithReducer(m).run(); }

}  // namespace pervlen
