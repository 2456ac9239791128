#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pervlen/constructible_set.hpp"
#include "pervlen/local_system.hpp"
#include "pervlen/trace_geometry.hpp"

namespace pervlen {

// The two functions under test in the trace-geometry checks. Replacing them
// lets tests confirm that a wrong implementation is caught.
struct VerificationSubject {
  std::function<ConstructibleSet(int)> stratify = pervlen::stratify;
  std::function<std::size_t(const TracePoint&)> length_from_traces = pervlen::length_from_traces;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  double seconds = 0;
  double budget_seconds = 0;
  // Summary on success, first counterexample on failure.
  std::string detail;
};

// Hand-written loci {length >= k} for k = 2..7, as unions of the lines and
// surfaces named in the table (not derived from the length rule).
struct ReferenceLocus {
  int k;
  std::string notation;
  ConstructibleSet set;
};
std::vector<ReferenceLocus> reference_table();

CriterionResult check_golden_table(const VerificationSubject& subject = {});
CriterionResult check_trace_consistency(const VerificationSubject& subject = {}, std::size_t samples = 1000);
CriterionResult check_length_identities(std::size_t samples = 500);
CriterionResult check_composition_oracle(std::size_t samples = 500);
CriterionResult check_torus_calculus(std::size_t pairs = 200, std::size_t matrices = 500);
CriterionResult check_rank1_loci();
// Holds when criteria 1-6 hold; the general theorems are existence results
// whose explicit instances are what 1-6 exercise.
CriterionResult check_scope_statement(const std::vector<CriterionResult>& earlier);

std::vector<CriterionResult> run_all_checks(const VerificationSubject& subject = {});

// "PASS 3 identities: ... [0.41 s / 30 s]"
std::string format_result(const CriterionResult& r);

// Random generators shared by the checks, tests and benchmarks. Rationals
// have numerator and denominator bounded by `height`.
class RepSampler {
 public:
  explicit RepSampler(std::uint64_t seed, long height = 10) : gen_(seed), height_(height) {}

  mpq_class rational();
  mpq_class nonzero_rational();
  // Rational SL2 matrix; with force_trace_two the matrix is unipotent.
  Mat2 sl2_matrix(bool force_trace_two = false);
  // Rational GL2 matrix with det != 0.
  Mat2 gl2_matrix();
  // Pair with nonzero discriminant.
  Representation irreducible_pair();
  // diag(l, 1/l), diag(m, 1/m) conjugated by a random rational matrix, with
  // l, m rational or units of a common real quadratic field.
  Representation diagonal_pair(bool conjugate);
  // Upper-triangular pair with a nonsplit extension, conjugated.
  Representation nonsplit_pair();
  // (A, A^k) for a rational A whose eigenvalues may be irrational.
  Representation commuting_pair();
  // Any of the above, or a rank-1 / GL2 / more-puncture system.
  Representation mixed(bool sl2_two_punctures_only);

  std::uint64_t next(std::uint64_t bound) { return gen_() % bound; }

 private:
  Mat2 conjugate_by_random(const Mat2& m, const Mat2& p) const;
  Mat2 random_invertible();

  std::mt19937_64 gen_;
  long height_;
};

}  // namespace pervlen
