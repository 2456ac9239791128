#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pervlen {

// Dense integer matrix. Arithmetic is checked: overflow of 64-bit entries
// throws std::overflow_error.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Rows [first, first + count).
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  // Stack `o` below this matrix.
  IntMatrix stacked(const IntMatrix& o) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> e_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// U * M * V = D with U, V unimodular, D diagonal with nonnegative entries
// d_1 | d_2 | ... ; v_inverse is V^-1. The pivoting rule (smallest nonzero
// absolute value, first in row-major order) makes the output deterministic.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inverse;
  std::size_t rank = 0;

  std::vector<std::int64_t> divisors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace pervlen
