#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pervlen/error.hpp"
#include "pervlen/mat2.hpp"
#include "pervlen/polynomial.hpp"
#include "pervlen/scalar.hpp"

namespace pervlen {
namespace {

using oracle::q;

TEST(Scalar, CanonicalFormMakesEqualitySyntactic) {
  EXPECT_EQ(Scalar::quadratic(1, 1, 8), Scalar::quadratic(1, 2, 2));
  EXPECT_EQ(Scalar::quadratic(3, 0, 5), Scalar(3));
  EXPECT_EQ(Scalar::quadratic(3, 0, 5).disc(), 0);
  EXPECT_EQ(Scalar::sqrt_of(9), Scalar(3));
  EXPECT_EQ(Scalar::sqrt_of(12).disc(), 3);
  EXPECT_EQ(Scalar::sqrt_of(-4), Scalar::quadratic(0, 2, -1));
}

TEST(Scalar, ArithmeticInOneField) {
  const Scalar s = Scalar::sqrt_of(5);
  const Scalar phi = (Scalar(1) + s) / Scalar(2);
  EXPECT_EQ(phi * phi, phi + Scalar(1));
  EXPECT_EQ((s * s), Scalar(5));
  EXPECT_TRUE((s - s).is_rational());
  EXPECT_EQ(Scalar(1) / phi, phi - Scalar(1));
  EXPECT_EQ(phi.norm(), q(-1));
  EXPECT_EQ(phi.conj(), (Scalar(1) - s) / Scalar(2));
}

TEST(Scalar, MixingFieldsThrows) {
  EXPECT_THROW(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), FieldMismatch);
  EXPECT_THROW(Scalar::sqrt_of(2) * Scalar::sqrt_of(-1), FieldMismatch);
  EXPECT_NO_THROW(Scalar::sqrt_of(2) * Scalar(7));
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(0), std::domain_error); }

TEST(Scalar, TextFormat) {
  EXPECT_EQ(Scalar(q(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ(Scalar(0).to_string(), "0");
  EXPECT_EQ(Scalar::quadratic(q(3, 2), q(1, 2), 5).to_string(), "3/2+1/2*sqrt(5)");
  EXPECT_EQ(Scalar::quadratic(q(3, 2), q(-1, 2), 5).to_string(), "3/2-1/2*sqrt(5)");
  EXPECT_EQ(Scalar::parse("sqrt(8)"), Scalar::quadratic(0, 2, 2));
  EXPECT_EQ(Scalar::parse("-sqrt(-1)"), Scalar::quadratic(0, -1, -1));
  EXPECT_EQ(Scalar::parse(" 1/2 - 3*sqrt(7) "), Scalar::quadratic(q(1, 2), -3, 7));
  EXPECT_THROW(Scalar::parse("1/0"), ParseError);
  EXPECT_THROW(Scalar::parse("sqrt(x)"), ParseError);
  EXPECT_THROW(Scalar::parse(""), ParseError);
}

TEST(Scalar, SqrtInField) {
  EXPECT_EQ(*sqrt_in_field(Scalar(q(9, 4))), Scalar(q(3, 2)));
  EXPECT_EQ(*sqrt_in_field(Scalar(5)), Scalar::sqrt_of(5));
  // (1 + sqrt 2)^2 = 3 + 2 sqrt 2.
  const auto r = sqrt_in_field(Scalar::quadratic(3, 2, 2));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r * *r, Scalar::quadratic(3, 2, 2));
  EXPECT_FALSE(sqrt_in_field(Scalar::quadratic(1, 1, 2)).has_value());
}

TEST(Scalar, SquarefreePart) {
  EXPECT_EQ(squarefree_part(72), 2);
  EXPECT_EQ(squarefree_part(-27), -3);
  EXPECT_EQ(squarefree_part(mpz_class("1000000000000000000000")), 10);
}

// char_roots

TEST(CharRoots, TraceTwoGivesDoubleRootOne) {
  const auto [l, m] = char_roots(Mat2(1, 1, 0, 1));
  EXPECT_EQ(l, Scalar(1));
  EXPECT_EQ(m, Scalar(1));
}

TEST(CharRoots, TraceThreeMatchesQuadraticFormula) {
  const auto [l, m] = char_roots(Mat2(2, 1, 1, 1));
  // Independent: roots of t^2 - 3t + 1 are (3 +- sqrt 5) / 2.
  EXPECT_EQ(l, Scalar::quadratic(q(3, 2), q(1, 2), 5));
  EXPECT_EQ(m, Scalar::quadratic(q(3, 2), q(-1, 2), 5));
  EXPECT_EQ(l * m, Scalar(1));
}

TEST(CharRoots, TraceZeroGivesPlusMinusI) {
  const auto [l, m] = char_roots(Mat2(0, -1, 1, 0));
  EXPECT_EQ(l, Scalar::sqrt_of(-1));
  EXPECT_EQ(m, -Scalar::sqrt_of(-1));
}

TEST(CharRoots, RejectsIrrationalEntriesAndWrongDeterminant) {
  EXPECT_THROW(char_roots(Mat2(Scalar::sqrt_of(2), 0, 0, Scalar::sqrt_of(2) / Scalar(2))), std::invalid_argument);
  EXPECT_THROW(char_roots(Mat2(2, 0, 0, 1)), std::invalid_argument);
}

// eig1_multiplicity

TEST(Eig1Multiplicity, Examples) {
  EXPECT_EQ(eig1_multiplicity(Mat2::identity()), 2);
  EXPECT_EQ(eig1_multiplicity(Mat2(1, 1, 0, 1)), 1);
  EXPECT_EQ(eig1_multiplicity(Mat2(2, 0, 0, Scalar(q(1, 2)))), 0);
}

TEST(Eig1Multiplicity, QuadraticEntries) {
  const Scalar s = Scalar::sqrt_of(3);
  EXPECT_EQ(eig1_multiplicity(Mat2(1, s, 0, 1)), 1);
  EXPECT_EQ(eig1_multiplicity(Mat2(s, 0, 0, Scalar(1) / s)), 0);
}

// common_eigenvector

TEST(CommonEigenvector, IdentityPair) {
  const auto v = common_eigenvector(Mat2::identity(), Mat2::identity());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, (Vec2{Scalar(1), Scalar(0)}));
}

TEST(CommonEigenvector, UnipotentAndIdentity) {
  const Mat2 a(1, 1, 0, 1);
  const auto v = common_eigenvector(a, Mat2::identity());
  ASSERT_TRUE(v.has_value());
  // Oracle: the only eigenline of a is (1, 0), and the identity fixes it.
  const auto lines = oracle::shared_lines({a, Mat2::identity()});
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(*v, lines[0]);
}

TEST(CommonEigenvector, IrreduciblePairHasNone) {
  const Mat2 a(0, -1, 1, 0), b(1, 1, 1, 2);
  EXPECT_FALSE(common_eigenvector(a, b).has_value());
  // Oracle: a's eigenlines are (1, -+i); b maps neither to a multiple.
  const auto lines = oracle::kernel_lines(a);
  ASSERT_EQ(lines.size(), 2u);
  for (const auto& v : lines) EXPECT_FALSE(oracle::maps_to_multiple(b, v));
}

TEST(CommonEigenvector, IrrationalEigenlineSharedByPowers) {
  const Mat2 a(2, 1, 1, 1);
  const auto v = common_eigenvector(a, a * a);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->at(1).disc(), 5);
  EXPECT_TRUE(oracle::maps_to_multiple(a, *v));
}

TEST(CommonEigenvector, QuadraticEntriesNeedingDegreeFourFieldThrow) {
  // Both eigenvalues of a live in Q(sqrt 2, sqrt 3); b is a power of a, so
  // a common eigenline exists but only over the degree-4 field.
  const Mat2 a(Scalar::sqrt_of(2), 1, 1, 0);
  EXPECT_THROW(common_eigenvector(a, a * a), Unrepresentable);
  // With a non-commuting partner no common line exists; answered exactly.
  const Mat2 b(1, 0, 1, 1);
  EXPECT_FALSE(common_eigenvector(a, b).has_value());
}

TEST(Mat2, InverseTransposeAndDeterminant) {
  const Mat2 m(2, 1, 1, 1);
  EXPECT_EQ(m * m.inverse(), Mat2::identity());
  EXPECT_EQ(m.transpose(), Mat2(2, 1, 1, 1));
  EXPECT_EQ(Mat2(1, 2, 3, 4).det(), Scalar(-2));
  EXPECT_THROW(Mat2(1, 2, 2, 4).inverse(), std::domain_error);
  EXPECT_THROW(Mat2(Scalar::sqrt_of(2), Scalar::sqrt_of(3), 0, 1).disc(), FieldMismatch);
}

TEST(Mat2, EigenvalueOn) {
  const Mat2 m(3, 1, 0, 2);
  EXPECT_EQ(eigenvalue_on(m, Vec2{Scalar(1), Scalar(0)}), Scalar(3));
}

// Polynomials

const std::vector<std::string> kXYZ{"x", "y", "z"};

TEST(Polynomial, ParsePrintRoundTrip) {
  const auto p = Polynomial::parse("z^2 - x*y*z + x^2 + y^2 - 4", kXYZ);
  EXPECT_EQ(p.to_string(kXYZ), "-x*y*z + x^2 + y^2 + z^2 - 4");
  EXPECT_EQ(Polynomial::parse(p.to_string(kXYZ), kXYZ), p);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_THROW(Polynomial::parse("x + w", kXYZ), ParseError);
  EXPECT_THROW(Polynomial::parse("x +", kXYZ), ParseError);
}

TEST(Polynomial, SubstitutionShowsDiscriminantIsASquareOnXEqualsTwo) {
  const auto d = Polynomial::parse("z^2 - x*y*z + x^2 + y^2 - 4", kXYZ);
  const auto sub = d.substitute(0, Polynomial::constant(3, 2));
  const auto diff = Polynomial::parse("z - y", kXYZ);
  EXPECT_EQ(sub, diff * diff);
  const auto root = sub.sqrt();
  ASSERT_TRUE(root.has_value());
  EXPECT_EQ(root->primitive(), Polynomial::parse("y - z", kXYZ).primitive());
}

TEST(Polynomial, PrimitiveNormalization) {
  const auto p = Polynomial::parse("-2/3*x + 4/3*y", kXYZ);
  EXPECT_EQ(p.primitive(), Polynomial::parse("x - 2*y", kXYZ));
}

TEST(Polynomial, EvaluateAtMixedFieldPoint) {
  const auto p = Polynomial::parse("x*y - z", kXYZ);
  const std::vector<Scalar> pt{Scalar::sqrt_of(2), Scalar::sqrt_of(3), Scalar::sqrt_of(6)};
  EXPECT_TRUE(p.evaluate(pt).is_zero());
  const std::vector<Scalar> off{Scalar::sqrt_of(2), Scalar::sqrt_of(3), Scalar(6)};
  EXPECT_FALSE(p.evaluate(off).is_zero());
}

TEST(Polynomial, SolveLinear) {
  const auto sol = Polynomial::parse("2*x - y + 1", kXYZ).solve_linear();
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->first, 0u);
  EXPECT_EQ(sol->second, Polynomial::parse("1/2*y - 1/2", kXYZ));
  EXPECT_FALSE(Polynomial::parse("x*y - 1", kXYZ).solve_linear().has_value());
}

}  // namespace
}  // namespace pervlen
