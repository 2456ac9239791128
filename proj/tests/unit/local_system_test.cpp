#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pervlen/error.hpp"
#include "pervlen/local_system.hpp"

namespace pervlen {
namespace {

using oracle::q;

Representation pair(const Mat2& a, const Mat2& b, bool sl2 = true) { return Representation::rank_two({a, b}, sl2); }

const Mat2 kUnipotent(1, 1, 0, 1);
const Mat2 kRotation(0, -1, 1, 0);
const Mat2 kFib(1, 1, 1, 2);

TEST(Representation, ValidatesInput) {
  EXPECT_THROW(Representation::rank_two({}, true), std::invalid_argument);
  EXPECT_THROW(pair(Mat2(1, 2, 2, 4), Mat2::identity(), false), std::invalid_argument);
  EXPECT_THROW(pair(Mat2(2, 0, 0, 1), Mat2::identity(), true), std::invalid_argument);
  EXPECT_NO_THROW(pair(Mat2(2, 0, 0, 1), Mat2::identity(), false));
  EXPECT_THROW(pair(Mat2::diagonal(Scalar::sqrt_of(2), Scalar::sqrt_of(2) / Scalar(2)),
                    Mat2::diagonal(Scalar::sqrt_of(3), Scalar::sqrt_of(3) / Scalar(3))),
               FieldMismatch);
  EXPECT_THROW(Representation::rank_one({Scalar(0)}), std::invalid_argument);
}

TEST(CompositionFactors, IdentityPairGivesTwoTrivialCharacters) {
  const auto f = composition_factors(pair(Mat2::identity(), Mat2::identity()));
  ASSERT_EQ(f.size(), 2u);
  for (const auto& c : f) EXPECT_EQ(c.local_system.characters(), (std::vector<Scalar>{1, 1}));
  EXPECT_EQ(f[0].position, 0u);
  EXPECT_EQ(f[1].position, 1u);
}

TEST(CompositionFactors, UnipotentPairGivesTwoTrivialCharacters) {
  const auto f = composition_factors(pair(kUnipotent, Mat2::identity()));
  ASSERT_EQ(f.size(), 2u);
  // Oracle: the invariant line (1, 0) carries eigenvalue 1 for both.
  const auto lines = oracle::shared_lines({kUnipotent, Mat2::identity()});
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], (Vec2{Scalar(1), Scalar(0)}));
  EXPECT_EQ(f[0].local_system.characters(), (std::vector<Scalar>{1, 1}));
  EXPECT_EQ(f[1].local_system.characters(), (std::vector<Scalar>{1, 1}));
}

TEST(CompositionFactors, IrreduciblePairIsOneFactor) {
  const auto rep = pair(kRotation, kFib);
  EXPECT_TRUE(oracle::shared_lines({kRotation, kFib}).empty());
  const auto f = composition_factors(rep);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].local_system, rep);
}

TEST(CompositionFactors, SubBeforeQuotient) {
  // Upper triangular: the line (1, 0) carries (2, 3); the quotient carries
  // det / sub.
  const auto rep = pair(Mat2(2, 5, 0, Scalar(q(1, 2))), Mat2(3, 1, 0, Scalar(q(1, 3))));
  const auto f = composition_factors(rep);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].local_system.characters(), (std::vector<Scalar>{2, 3}));
  EXPECT_EQ(f[1].local_system.characters(), (std::vector<Scalar>{Scalar(q(1, 2)), Scalar(q(1, 3))}));
}

TEST(LocalSystemLength, Examples) {
  EXPECT_EQ(local_system_length(Representation::rank_one({1})), 1u);
  EXPECT_EQ(local_system_length(pair(Mat2::identity(), Mat2::identity())), 2u);
  EXPECT_EQ(local_system_length(pair(kRotation, kFib)), 1u);
}

TEST(Semisimplify, UnipotentBecomesIdentity) {
  const auto ss = semisimplify(pair(kUnipotent, Mat2::identity()));
  EXPECT_EQ(ss.matrices()[0], Mat2::identity());
  EXPECT_EQ(ss.matrices()[1], Mat2::identity());
  EXPECT_TRUE(is_semisimple(ss));
}

TEST(Semisimplify, SemisimpleInputReturnedUnchanged) {
  const auto irr = pair(kRotation, kFib);
  EXPECT_EQ(semisimplify(irr), irr);
  const auto diag = pair(Mat2::diagonal(2, Scalar(q(1, 2))), Mat2::diagonal(3, Scalar(q(1, 3))));
  EXPECT_EQ(semisimplify(diag), diag);
}

TEST(Semisimplify, Idempotent) {
  const auto rep = pair(Mat2(2, 5, 0, Scalar(q(1, 2))), Mat2(3, 1, 0, Scalar(q(1, 3))));
  const auto once = semisimplify(rep);
  EXPECT_EQ(semisimplify(once), once);
}

TEST(IsSemisimple, DistinguishesSplitFromNonsplit) {
  EXPECT_FALSE(is_semisimple(pair(kUnipotent, Mat2::identity())));
  EXPECT_TRUE(is_semisimple(pair(Mat2::diagonal(2, Scalar(q(1, 2))), Mat2::identity())));
  // Conjugated diagonal pair: still split.
  const Mat2 p(1, 2, 3, 7);
  const Mat2 pinv = p.inverse();
  EXPECT_TRUE(is_semisimple(pair(p * Mat2::diagonal(2, Scalar(q(1, 2))) * pinv,
                                 p * Mat2::diagonal(3, Scalar(q(1, 3))) * pinv)));
  // Common eigenline (1, 0) only: nonsplit.
  EXPECT_FALSE(is_semisimple(pair(Mat2(2, 1, 0, Scalar(q(1, 2))), Mat2::diagonal(2, Scalar(q(1, 2))))));
}

TEST(PunctureH1, Examples) {
  const auto trivial = Representation::rank_one({1, 1, 1});
  for (std::size_t p = 0; p < 3; ++p) EXPECT_EQ(puncture_h1(trivial, p), 1);
  EXPECT_EQ(puncture_h1(pair(kUnipotent, Mat2::identity()), 0), 1);
  EXPECT_EQ(puncture_h1(pair(Mat2(2, 1, 1, 1), Mat2::identity()), 0), 0);
  EXPECT_THROW(puncture_h1(trivial, 3), std::out_of_range);
}

TEST(PushforwardLength, TrivialRankTwoIsSix) {
  // Maximal stratum of the table is the single point (2,2,2) with length 6.
  const auto rep = pair(Mat2::identity(), Mat2::identity());
  EXPECT_EQ(pushforward_length(rep), 6u);
  EXPECT_EQ(pushforward_length(rep, Pushforward::kShriek), 6u);
}

TEST(PushforwardLength, UnipotentIsSix) {
  // Oracle: two trivial factors, each 1 + 1 + 1.
  const auto rep = pair(kUnipotent, Mat2::identity());
  std::size_t oracle_total = 0;
  for (const auto& f : composition_factors(rep)) {
    std::size_t contrib = 1;
    for (const auto& c : f.local_system.characters()) contrib += c.is_one() ? 1 : 0;
    oracle_total += contrib;
  }
  EXPECT_EQ(oracle_total, 6u);
  EXPECT_EQ(pushforward_length(rep), oracle_total);
}

TEST(PushforwardLength, TracesThreeThreeSixGiveOne) {
  EXPECT_EQ(pushforward_length(pair(Mat2(2, 1, 1, 1), kFib)), 1u);
}

TEST(PushforwardLength, ShriekDiffersFromStarRouteButAgrees) {
  const auto rep = pair(Mat2(1, 3, 0, 1), Mat2(2, 7, 0, Scalar(q(1, 2))));
  EXPECT_EQ(pushforward_length(rep, Pushforward::kStar), pushforward_length(rep, Pushforward::kShriek));
  EXPECT_EQ(pushforward_length(rep), 2u + 1u + 1u);
}

TEST(PushforwardLength, GL2AndMorePunctures) {
  const auto rep = Representation::rank_two({Mat2(1, 1, 0, 1), Mat2(1, 0, 0, 5), Mat2(3, 0, 0, 1)}, false);
  // Sub (1, 1, 3): 1 + 2 trivial punctures; quotient (1, 5, 1): 1 + 2.
  EXPECT_EQ(pushforward_length(rep), 6u);
}

TEST(IcLength, Examples) {
  EXPECT_EQ(ic_length(Representation::rank_one({1})), 1u);
  EXPECT_EQ(ic_length(pair(kRotation, kFib)), 1u);
  EXPECT_EQ(ic_length(pair(Mat2::diagonal(2, Scalar(q(1, 2))), Mat2::diagonal(2, Scalar(q(1, 2))))), 2u);
  EXPECT_THROW(ic_length(pair(kUnipotent, Mat2::identity())), std::invalid_argument);
}

TEST(Dual, InverseTranspose) {
  const auto rep = pair(Mat2(2, 1, 1, 1), kFib);
  const auto d = rep.dual();
  EXPECT_EQ(d.matrices()[0], Mat2(1, -1, -1, 2));
  EXPECT_EQ(d.dual(), rep);
  EXPECT_EQ(Representation::rank_one({Scalar(2)}).dual().characters()[0], Scalar(q(1, 2)));
}

TEST(RepresentationJson, RoundTrip) {
  const auto rep = pair(Mat2(Scalar::quadratic(q(3, 2), q(1, 2), 5), 0, 0, Scalar::quadratic(q(3, 2), q(-1, 2), 5)),
                        Mat2::identity());
  const std::string text = to_json(rep);
  EXPECT_EQ(text,
            "{\"punctures\":2,\"rank\":2,\"sl2\":true,\"matrices\":[[[\"3/2+1/2*sqrt(5)\",\"0\"],[\"0\",\"3/2-1/2*"
            "sqrt(5)\"]],[[\"1\",\"0\"],[\"0\",\"1\"]]]}\n");
  EXPECT_EQ(parse_representation(text), rep);
  const auto r1 = Representation::rank_one({Scalar(-1), Scalar(q(2, 3))});
  EXPECT_EQ(parse_representation(to_json(r1)), r1);
}

TEST(RepresentationJson, SkipsHeaderAndAcceptsIntegers) {
  const auto rep = parse_representation("# pervlen-representation v1\n{\"punctures\":1,\"rank\":1,\"sl2\":false,"
                                        "\"matrices\":[[[-1]]]}");
  EXPECT_EQ(rep.characters()[0], Scalar(-1));
}

std::string parse_error_where(const std::string& text) {
  try {
    parse_representation(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "no error";
}

TEST(RepresentationJson, DiagnosticsNameLineOrField) {
  EXPECT_EQ(parse_error_where("# header\n{\"punctures\": 2,\n \"rank\": }"), "line 3");
  EXPECT_EQ(parse_error_where("{\"rank\":2,\"sl2\":true,\"matrices\":[]}"), "punctures");
  EXPECT_EQ(parse_error_where("{\"punctures\":1,\"rank\":3,\"sl2\":true,\"matrices\":[]}"), "rank");
  EXPECT_EQ(parse_error_where("{\"punctures\":2,\"rank\":2,\"sl2\":true,\"matrices\":[[[\"1\",\"0\"],[\"0\",\"1\"]]]}"),
            "matrices");
  EXPECT_EQ(parse_error_where(
                "{\"punctures\":1,\"rank\":2,\"sl2\":true,\"matrices\":[[[\"1\",\"0\"],[\"zero\",\"1\"]]]}"),
            "matrices[0][1][0]");
  EXPECT_EQ(parse_error_where("{\"punctures\":1,\"rank\":2,\"sl2\":true,\"matrices\":[[[\"2\",\"0\"],[\"0\",\"1\"]]]}"),
            "matrices");
}

}  // namespace
}  // namespace pervlen
