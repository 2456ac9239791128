#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pervlen/error.hpp"
#include "pervlen/local_system.hpp"
#include "pervlen/torus_set.hpp"

namespace pervlen {
namespace {

using oracle::q;

TorsionCoset coset(IntMatrix e, std::vector<mpq_class> rhs) {
  const std::size_t b = e.cols();
  return TorsionCoset(b, std::move(e), std::move(rhs));
}

void expect_smith(const IntMatrix& m, const IntMatrix& expected_d) {
  const SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.u * m * s.v, s.d);
  EXPECT_EQ(s.d, expected_d);
  EXPECT_EQ(abs(oracle::determinant(s.u)), 1);
  EXPECT_EQ(abs(oracle::determinant(s.v)), 1);
  EXPECT_EQ(s.v * s.v_inverse, IntMatrix::identity(m.cols()));
  EXPECT_EQ(s.rank, oracle::rank(m));
}

TEST(SmithNormalForm, Examples) {
  expect_smith({{2, 0}, {0, 4}}, {{2, 0}, {0, 4}});
  expect_smith({{2, 0}, {0, 3}}, {{1, 0}, {0, 6}});
  expect_smith({{1, 1}, {1, -1}}, {{1, 0}, {0, 2}});
}

TEST(SmithNormalForm, RectangularAndSingular) {
  expect_smith({{2, 4, 6}}, {{2, 0, 0}});
  expect_smith({{1, 2}, {2, 4}, {3, 6}}, {{1, 0}, {0, 0}, {0, 0}});
  expect_smith({{0, 0}, {0, 0}}, {{0, 0}, {0, 0}});
  const SmithForm s = smith_normal_form({{6, 4}, {10, 8}});
  EXPECT_EQ(s.divisors(), (std::vector<std::int64_t>{2, 4}));
}

TEST(SmithNormalForm, NegativeEntries) { expect_smith({{-3, 0}, {0, -5}}, {{1, 0}, {0, 15}}); }

TEST(IntMatrix, CheckedArithmetic) {
  EXPECT_THROW(checked_mul(INT64_MAX, 2), std::overflow_error);
  EXPECT_THROW(checked_add(INT64_MAX, 1), std::overflow_error);
  EXPECT_EQ(IntMatrix({{1, 2}}).to_string(), "[[1, 2]]");
}

TEST(TorsionCoset, ValidatesAndReducesRhs) {
  const TorsionCoset c(2, {{1, 0}}, {q(3, 2)});
  EXPECT_EQ(c.rhs()[0], q(1, 2));
  EXPECT_EQ(TorsionCoset(1, {{1}}, {q(-1, 3)}).rhs()[0], q(2, 3));
  EXPECT_THROW(TorsionCoset(2, {{1, 0, 0}}, {0}), std::invalid_argument);
  EXPECT_THROW(TorsionCoset(2, {{1, 0}}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(TorsionCoset(0, IntMatrix(0, 0), {}), std::invalid_argument);
}

TEST(CosetNormalize, Examples) {
  const auto sub = coset_normalize(coset({{1, 0}}, {0}));
  ASSERT_TRUE(sub.has_value());
  EXPECT_EQ(sub->dimension, 1u);

  EXPECT_FALSE(coset_normalize(coset({{1, 0}, {1, 0}}, {0, q(1, 2)})).has_value());

  const auto square = coset_normalize(coset({{2, 0}}, {0}));
  ASSERT_TRUE(square.has_value());
  EXPECT_EQ(square->dimension, 1u);
  const auto parts = coset_components(coset({{2, 0}}, {0}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], coset_normalize(coset({{1, 0}}, {0}))->canonical);
  EXPECT_EQ(parts[1], coset_normalize(coset({{1, 0}}, {q(1, 2)}))->canonical);
}

TEST(CosetNormalize, CanonicalFormDecidesSetEquality) {
  const auto a = coset_normalize(coset({{1, 1}, {1, -1}}, {0, 0}));
  const auto b = coset_normalize(coset({{1, -1}, {2, 0}}, {0, 0}));
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->canonical, b->canonical);
  EXPECT_EQ(a->dimension, 0u);
  EXPECT_EQ(a->divisors, (std::vector<std::int64_t>{1, 2}));
}

TEST(CosetNormalize, FullTorus) {
  const auto f = coset_normalize(TorsionCoset::full(3));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->dimension, 3u);
}

std::vector<TorsionCoset> points(std::vector<TorsionPoint> vs) {
  std::vector<TorsionCoset> out;
  for (const auto& v : vs) out.push_back(coset_normalize(TorsionCoset::point(v))->canonical);
  std::sort(out.begin(), out.end(), [](const TorsionCoset& a, const TorsionCoset& b) { return canonical_less(a, b); });
  return out;
}

TEST(IntersectCosets, Examples) {
  EXPECT_EQ(intersect_cosets(TorsionCoset::trivial_at(2, 0), TorsionCoset::trivial_at(2, 1)), points({{0, 0}}));
  EXPECT_EQ(intersect_cosets(coset({{1, 1}}, {0}), coset({{1, -1}}, {0})), points({{0, 0}, {q(1, 2), q(1, 2)}}));
  EXPECT_TRUE(intersect_cosets(coset({{1, 0}}, {q(1, 2)}), coset({{1, 0}}, {0})).empty());
  EXPECT_THROW(intersect_cosets(TorsionCoset::full(1), TorsionCoset::full(2)), std::invalid_argument);
}

TEST(IntersectCosets, AgreesWithBruteForce) {
  const TorsionCoset a = coset({{1, 1}}, {0}), b = coset({{1, -1}}, {0});
  const auto comps = intersect_cosets(a, b);
  for (const auto& v : oracle::torsion_points(2, 12)) {
    const bool in_both = oracle::satisfies(a.equations(), a.rhs(), v) && oracle::satisfies(b.equations(), b.rhs(), v);
    const bool in_some = std::any_of(comps.begin(), comps.end(), [&](const TorsionCoset& c) { return member_torsion(c, v); });
    EXPECT_EQ(in_both, in_some) << to_string(v);
  }
}

TEST(IntersectCosets, GuardExceeded) {
  EXPECT_THROW(coset_components(coset({{101, 0}, {0, 101}}, {0, 0})), GuardExceeded);
  EXPECT_NO_THROW(coset_components(coset({{100, 0}, {0, 100}}, {0, 0})));
}

TEST(MemberTorsion, Examples) {
  EXPECT_TRUE(member_torsion(TorsionCoset::trivial_at(2, 0), {0, 0}));
  EXPECT_TRUE(member_torsion(coset({{1, 1}}, {0}), {q(1, 2), q(1, 2)}));
  EXPECT_FALSE(member_torsion(TorsionCoset::trivial_at(2, 0), {q(1, 3), 0}));
}

TEST(MemberTorsion, FormulaFoldsTree) {
  const TorusFormula f{2, CosetFormula::conj({CosetFormula::atom(TorsionCoset::trivial_at(2, 0)),
                                              CosetFormula::negate(CosetFormula::atom(TorsionCoset::trivial_at(2, 1)))})};
  EXPECT_TRUE(member_torsion(f, {0, q(1, 2)}));
  EXPECT_FALSE(member_torsion(f, {0, 0}));
  EXPECT_THROW(member_torsion(f, {0}), std::invalid_argument);
}

TEST(Rank1JumpLocus, Examples) {
  const auto n1k2 = rank1_jump_locus(1, 2);
  EXPECT_EQ(n1k2.formula, CosetFormula::atom(TorsionCoset::trivial_at(1, 0)));
  EXPECT_EQ(pushforward_length(Representation::rank_one({1})), 2u);

  const auto n2k3 = rank1_jump_locus(2, 3);
  EXPECT_TRUE(member_torsion(n2k3, {0, 0}));
  EXPECT_FALSE(member_torsion(n2k3, {0, q(1, 2)}));
  EXPECT_EQ(pushforward_length(Representation::rank_one({1, 1})), 3u);

  const auto n2k1 = rank1_jump_locus(2, 1);
  EXPECT_EQ(n2k1.formula, CosetFormula::conj({CosetFormula::negate(CosetFormula::atom(TorsionCoset::trivial_at(2, 0))),
                                              CosetFormula::negate(CosetFormula::atom(TorsionCoset::trivial_at(2, 1)))}));
  EXPECT_TRUE(member_torsion(n2k1, {q(1, 2), q(1, 2)}));
  EXPECT_EQ(pushforward_length(Representation::rank_one({-1, -1})), 1u);
}

TEST(Rank1JumpLocus, OutOfRange) {
  EXPECT_TRUE(rank1_jump_locus(2, 0).formula.is_false());
  EXPECT_TRUE(rank1_jump_locus(2, 4).formula.is_false());
  EXPECT_EQ(rank1_jump_locus(2, 4).ambient_rank, 2u);
  EXPECT_THROW(rank1_jump_locus(0, 1), std::invalid_argument);
}

TEST(Rank1JumpLocus, MatchesPushforwardOnRootsOfUnity) {
  // exp(2 pi i v) for v in {0, 1/2, 1/4, 3/4} lies in Q(i).
  const std::vector<std::pair<mpq_class, Scalar>> roots{
      {0, Scalar(1)}, {q(1, 2), Scalar(-1)}, {q(1, 4), Scalar::sqrt_of(-1)}, {q(3, 4), -Scalar::sqrt_of(-1)}};
  for (const auto& [v1, s1] : roots)
    for (const auto& [v2, s2] : roots) {
      const auto len = pushforward_length(Representation::rank_one({s1, s2}));
      for (int k = 1; k <= 3; ++k)
        EXPECT_EQ(member_torsion(rank1_jump_locus(2, k), {v1, v2}), static_cast<std::size_t>(k) == len);
    }
}

TEST(TorusText, RoundTripFormula) {
  const TorusFormula f = rank1_jump_locus(3, 2);
  const std::string text = to_text(f);
  EXPECT_EQ(text.substr(0, text.find('\n')), "# pervlen-torus v1");
  const TorusFormula back = parse_torus_formula(text);
  EXPECT_EQ(back.ambient_rank, 3u);
  EXPECT_EQ(back.formula, f.formula);
}

TEST(TorusText, CosetAndComponentList) {
  const auto bare = parse_torus_formula("{\"equations\": [[1, -1]], \"rhs\": [\"1/3\"]}");
  EXPECT_EQ(bare.ambient_rank, 2u);
  EXPECT_EQ(bare.formula.leaf(), coset({{1, -1}}, {q(1, 3)}));

  const auto comps = intersect_cosets(coset({{1, 1}}, {0}), coset({{1, -1}}, {0}));
  const auto list = parse_torus_formula(components_to_text(2, comps));
  EXPECT_TRUE(member_torsion(list, {q(1, 2), q(1, 2)}));
  EXPECT_FALSE(member_torsion(list, {q(1, 2), 0}));
  EXPECT_TRUE(parse_torus_formula(components_to_text(2, {})).formula.is_false());
}

std::string torus_error_where(const std::string& text) {
  try {
    parse_torus_formula(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "no error";
}

TEST(TorusText, Diagnostics) {
  EXPECT_EQ(torus_error_where("{\"equations\": [[1, 0]], \"rhs\": [\"1/0\"]}"), "coset.rhs[0]");
  EXPECT_EQ(torus_error_where("{\"equations\": [[1, 0], [1]], \"rhs\": [\"0\", \"0\"]}"), "coset.equations[1]");
  EXPECT_EQ(torus_error_where("{\"ambient_rank\": 2, \"formula\": {\"op\": \"and\", \"args\": [{\"equations\": "
                              "[[1, 0], [1]], \"rhs\": [\"0\", \"0\"]}]}}"),
            "formula.args[0].equations[1]");
  EXPECT_EQ(torus_error_where("{\"ambient_rank\": 2, \"formula\": {\"op\": \"xor\"}}"), "formula.op");
}

TEST(TorsionPointText, ParseAndPrint) {
  EXPECT_EQ(parse_torsion_point("1/3,0"), (TorsionPoint{q(1, 3), 0}));
  EXPECT_EQ(parse_torsion_point("(4/3 -1/2)"), (TorsionPoint{q(1, 3), q(1, 2)}));
  EXPECT_EQ(to_string(TorsionPoint{q(1, 3), 0}), "(1/3, 0)");
  EXPECT_THROW(parse_torsion_point("1/0"), ParseError);
  EXPECT_THROW(parse_torsion_point("abc"), ParseError);
  EXPECT_THROW(parse_torsion_point(""), ParseError);
}

}  // namespace
}  // namespace pervlen
