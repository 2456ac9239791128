#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pervlen/bool_formula.hpp"
#include "pervlen/lattice.hpp"

namespace pervlen {

// Exponent vector v of the torsion point t = exp(2 pi i v) in (C*)^b.
// Entries are reduced into [0, 1).
using TorsionPoint = std::vector<mpq_class>;

// Fractional part, in [0, 1).
mpq_class frac(mpq_class q);

// {t in (C*)^b : t^(row i of equations) = exp(2 pi i rhs_i)}. On exponent
// vectors this is {v : equations * v = rhs mod 1}.
class TorsionCoset {
 public:
  TorsionCoset() = default;
  // Reduces rhs mod 1. Throws std::invalid_argument on shape mismatch or
  // ambient_rank == 0.
  TorsionCoset(std::size_t ambient_rank, IntMatrix equations, std::vector<mpq_class> rhs);

  // The whole torus.
  static TorsionCoset full(std::size_t ambient_rank);
  // {t_p = 1}, 0-based p.
  static TorsionCoset trivial_at(std::size_t ambient_rank, std::size_t p);
  // The single torsion point v.
  static TorsionCoset point(const TorsionPoint& v);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const IntMatrix& equations() const noexcept { return equations_; }
  const std::vector<mpq_class>& rhs() const noexcept { return rhs_; }

  friend bool operator==(const TorsionCoset& a, const TorsionCoset& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.equations_ == b.equations_ && a.rhs_ == b.rhs_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  IntMatrix equations_;
  std::vector<mpq_class> rhs_;
};

// Deterministic total order (ambient rank, equations, rhs), used to sort
// component lists.
bool canonical_less(const TorsionCoset& a, const TorsionCoset& b);

using CosetFormula = BoolFormula<TorsionCoset>;

struct TorusFormula {
  std::size_t ambient_rank = 0;
  CosetFormula formula;
};

struct NormalizedCoset {
  // Same set, with equations in row Hermite normal form; two cosets are
  // equal as sets iff their canonical forms are equal.
  TorsionCoset canonical;
  std::size_t dimension = 0;
  // Nonzero elementary divisors of the equation matrix.
  std::vector<std::int64_t> divisors;
};

// std::nullopt when the coset is empty.
std::optional<NormalizedCoset> coset_normalize(const TorsionCoset& c);

// Upper bound on the number of components produced by one split.
inline constexpr std::int64_t kComponentGuard = 10000;

// Connected components (torsion-translated subtori), in canonical form and
// sorted. Empty list for an empty coset. Throws GuardExceeded when the
// product of elementary divisors exceeds kComponentGuard.
std::vector<TorsionCoset> coset_components(const TorsionCoset& c);

// a and b as a finite union of connected cosets. Throws
// std::invalid_argument on ambient rank mismatch, GuardExceeded as above.
std::vector<TorsionCoset> intersect_cosets(const TorsionCoset& a, const TorsionCoset& b);

bool member_torsion(const TorsionCoset& c, const TorsionPoint& v);
// Throws std::invalid_argument on ambient rank mismatch.
bool member_torsion(const TorusFormula& f, const TorsionPoint& v);

// Locus in (C*)^n of rank-1 local systems L with length(Rj_*(L[1])) = k,
// namely exactly k - 1 trivial monodromies. Throws std::invalid_argument
// for n == 0 or n > 62.
TorusFormula rank1_jump_locus(std::size_t n, int k);

// Text formats. Every document starts with a "# pervlen-torus v1" line.
//   coset:    {"equations": [[int]], "rhs": ["p/q"]}
//   formula:  {"ambient_rank": b, "formula": node}, node being a coset or
//             {"op": "and"|"or", "args": [...]}, {"op": "not", "arg": node},
//             {"op": "true"}, {"op": "false"}
//   list:     {"ambient_rank": b, "components": [coset, ...]}
std::string to_text(const TorusFormula& f);
std::string components_to_text(std::size_t ambient_rank, const std::vector<TorsionCoset>& cs);
// Accepts all three shapes; a list reads as the union of its components and
// a bare coset may carry "ambient_rank" or infer it from its columns.
// Throws ParseError.
TorusFormula parse_torus_formula(std::string_view text);

// "1/3,0" or "1/3 0"; entries reduced mod 1. Throws ParseError.
TorsionPoint parse_torsion_point(std::string_view text);
std::string to_string(const TorsionPoint& v);

}  // namespace pervlen
