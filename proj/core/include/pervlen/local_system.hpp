#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pervlen/mat2.hpp"
#include "pervlen/scalar.hpp"

namespace pervlen {

/*
 * A rank 1 or rank 2 local system on U = C minus n points, given by its
 * monodromy around each puncture. pi_1(U) is free on the puncture loops,
 * so any tuple of invertible monodromies is allowed.
 *
 * Rank 1 monodromies are scalars, rank 2 monodromies 2x2 matrices. All
 * entries share one field Q or Q(sqrt(d)). The sl2 flag asserts det = 1 for
 * every monodromy and is checked on construction.
 */
class Representation {
 public:
  // Throw std::invalid_argument on a non-invertible monodromy, an empty
  // list or a violated sl2 flag; FieldMismatch on mixed fields.
  static Representation rank_one(std::vector<Scalar> characters, bool sl2 = false);
  static Representation rank_two(std::vector<Mat2> matrices, bool sl2);

  int rank() const noexcept { return rank_; }
  std::size_t punctures() const noexcept { return rank_ == 1 ? characters_.size() : matrices_.size(); }
  bool sl2() const noexcept { return sl2_; }
  std::int64_t disc() const noexcept { return disc_; }

  // Rank 1 only.
  const std::vector<Scalar>& characters() const;
  // Rank 2 only.
  const std::vector<Mat2>& matrices() const;

  // The dual local system: inverse (rank 1) or inverse transpose (rank 2).
  Representation dual() const;

  friend bool operator==(const Representation& l, const Representation& r) {
    return l.rank_ == r.rank_ && l.sl2_ == r.sl2_ && l.characters_ == r.characters_ &&
           l.matrices_ == r.matrices_;
  }

 private:
  Representation() = default;

  int rank_ = 1;
  bool sl2_ = false;
  std::int64_t disc_ = 0;
  std::vector<Scalar> characters_;
  std::vector<Mat2> matrices_;
};

struct CompositionFactor {
  Representation local_system;  // rank 1, or an irreducible rank 2 system
  std::size_t position = 0;     // 0-based index in the series
};

enum class Pushforward { kStar, kShriek };

// Composition series, sub before quotient. For a reducible rank 2 system the
// sub is the character on the first common eigenline found.
std::vector<CompositionFactor> composition_factors(const Representation& rep);

std::size_t local_system_length(const Representation& rep);

bool is_semisimple(const Representation& rep);

// Direct sum of the composition factors. Semisimple input (irreducible or
// already split) is returned unchanged.
Representation semisimplify(const Representation& rep);

// dim H^1 of a small punctured disk at puncture p with coefficients in rep:
// the number of Jordan blocks with eigenvalue 1 of the p-th monodromy.
// Throws std::out_of_range.
int puncture_h1(const Representation& rep, std::size_t p);

// Length of Rj_*(L[1]) or Rj_!(L[1]) for j: U -> C. Each composition factor
// F contributes 1 + sum_p dim H^1(U_p, F). The shriek variant is computed
// on the dual system.
std::size_t pushforward_length(const Representation& rep, Pushforward variant = Pushforward::kStar);

// Length of j_!*(L[1]) for semisimple L, which equals the length of L.
// Throws std::invalid_argument for non-semisimple input.
std::size_t ic_length(const Representation& rep);

// JSON exchange format:
//   { "punctures": n, "rank": r, "sl2": bool, "matrices": [ [[s,s],[s,s]], ... ] }
// with rank 1 monodromies written as [[s]]. Leading '#' lines are skipped.
// Throws ParseError with a line or field location.
Representation parse_representation(std::string_view text);
std::string to_json(const Representation& rep);

}  // namespace pervlen
