#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pervlen/bool_formula.hpp"
#include "pervlen/polynomial.hpp"
#include "pervlen/scalar.hpp"

namespace pervlen {

// The hypersurface {p = 0}; p is stored primitive with positive leading
// coefficient, so equal zero sets of proportional polynomials compare equal.
class PolyAtom {
 public:
  PolyAtom() = default;
  // Throws std::invalid_argument for constant p (use ConstructibleSet::zero_set).
  explicit PolyAtom(const Polynomial& p);

  const Polynomial& poly() const noexcept { return poly_; }
  friend bool operator==(const PolyAtom& l, const PolyAtom& r) { return l.poly_ == r.poly_; }

 private:
  Polynomial poly_;
};

using Point = std::vector<Scalar>;

struct LabeledPoint {
  Point coords;
  std::string label;
};

// Boolean combination of polynomial zero sets in affine space over the
// named variables.
class ConstructibleSet {
 public:
  using Formula = BoolFormula<PolyAtom>;

  ConstructibleSet(std::vector<std::string> vars, Formula formula);

  static ConstructibleSet empty(std::vector<std::string> vars);
  static ConstructibleSet full(std::vector<std::string> vars);
  static ConstructibleSet zero_set(std::vector<std::string> vars, const Polynomial& p);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const Formula& formula() const noexcept { return formula_; }

  bool contains(std::span<const Scalar> point) const;

  friend bool operator==(const ConstructibleSet& l, const ConstructibleSet& r) {
    return l.vars_ == r.vars_ && l.formula_ == r.formula_;
  }

 private:
  std::vector<std::string> vars_;
  Formula formula_;
};

// Throw std::invalid_argument when the variable contexts differ.
ConstructibleSet set_union(const ConstructibleSet& s, const ConstructibleSet& t);
ConstructibleSet set_intersect(const ConstructibleSet& s, const ConstructibleSet& t);
ConstructibleSet set_complement(const ConstructibleSet& s);
ConstructibleSet set_difference(const ConstructibleSet& s, const ConstructibleSet& t);

bool member(const ConstructibleSet& s, std::span<const Scalar> point);

struct Equivalence {
  bool equivalent = true;
  std::optional<LabeledPoint> witness;
};

// Semi-decision: agreement of membership at every sample point.
Equivalence equivalent_on(const ConstructibleSet& s, const ConstructibleSet& t,
                          std::span<const LabeledPoint> sample);

// A conjunction of p = 0 and q != 0 conditions after eliminating variables
// through the linear equalities it contains.
struct Conjunction {
  std::vector<Polynomial> zeros;
  std::vector<Polynomial> nonzeros;
};

// Simplify zeros/nonzeros by repeatedly solving linear equalities and
// substituting into the remaining conditions, replacing each reduced
// equality p = 0 by q = 0 when p is a constant multiple of a power of q.
// Returns nullopt when the conditions are shown inconsistent. A non-null
// result does not prove consistency.
std::optional<Conjunction> reduce_conjunction(std::span<const Polynomial> zeros,
                                              std::span<const Polynomial> nonzeros);

// The set of points whose zero pattern over `atoms` satisfies `on`, written
// as a minimal disjunction of conjunctions (patterns that reduce_conjunction
// refutes are used as don't-cares) with each conjunction reduced.
ConstructibleSet from_truth_table(std::vector<std::string> vars, std::span<const Polynomial> atoms,
                                  const std::function<bool(std::span<const bool>)>& on);

// Decide s == t exactly when every zero pattern of their combined atoms on
// which s and t disagree is either witnessed by a sample point (then the
// answer is "different") or refuted by reduce_conjunction. Otherwise the
// result is inconclusive.
struct PatternEquivalence {
  enum class Verdict { kEqual, kDifferent, kInconclusive } verdict = Verdict::kEqual;
  std::optional<LabeledPoint> witness;
  std::string detail;
  std::size_t patterns_checked = 0;
  std::size_t patterns_witnessed = 0;
  std::size_t patterns_refuted = 0;
};
PatternEquivalence decide_equal(const ConstructibleSet& s, const ConstructibleSet& t,
                                std::span<const LabeledPoint> sample);

// Formula text format (version header, "vars" line, indented tree).
std::string to_text(const ConstructibleSet& s);
ConstructibleSet parse_constructible_set(std::string_view text);

// Union-of-conjunctions rendering such as "{x=2, y=z} ∪ {y=2, x=z}".
std::string to_set_notation(const ConstructibleSet& s);

// Sample file: version header, "vars" line, then "label<TAB>c1<TAB>c2..." rows.
std::string sample_to_text(std::span<const std::string> vars, std::span<const LabeledPoint> sample);
std::vector<LabeledPoint> parse_sample(std::string_view text, std::vector<std::string>* vars = nullptr);

}  // namespace pervlen
