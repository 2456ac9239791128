#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;
using pervlen::cli::run;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pervlen");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(PERVLEN_DATA_DIR) + "/" + rel; }

fs::path scratch_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "pervlen_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliLength, UnipotentReport) {
  const auto r = invoke({"length", data("reps/unipotent_a.json")});
  ASSERT_EQ(r.code, pervlen::cli::kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "# pervlen-length v1\n"
            "punctures: 2\n"
            "rank: 2\n"
            "sl2: true\n"
            "semisimple: false\n"
            "local_system_length: 2\n"
            "h1_per_puncture: [1, 2]\n"
            "rj_star_length: 6\n"
            "rj_shriek_length: 6\n"
            "ic_length: n/a (not semisimple)\n"
            "traces: (2, 2, 2)\n"
            "closed_form_length: 6\n"
            "total: 6\n");
}

TEST(CliLength, IrreducibleAndRankOne) {
  const auto irr = invoke({"length", data("reps/irreducible_336.json")});
  ASSERT_EQ(irr.code, 0) << irr.err;
  EXPECT_NE(irr.out.find("traces: (3, 3, 6)\n"), std::string::npos);
  EXPECT_NE(irr.out.find("total: 1\n"), std::string::npos);

  const auto r1 = invoke({"length", data("reps/rank1_three_punctures.json")});
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_NE(r1.out.find("h1_per_puncture: [1, 0, 0]\n"), std::string::npos);
  EXPECT_NE(r1.out.find("total: 2\n"), std::string::npos);
  EXPECT_EQ(r1.out.find("traces:"), std::string::npos);
}

TEST(CliLength, InputErrors) {
  EXPECT_EQ(invoke({"length", "/nonexistent/file.json"}).code, pervlen::cli::kExitInputError);
  const auto bad = scratch_file("bad.json", "{\"punctures\": 1, \"rank\": 2, \"sl2\": true, \"matrices\": [[[\"2\",\"0\"],[\"0\",\"1\"]]]}");
  const auto r = invoke({"length", bad.string()});
  EXPECT_EQ(r.code, pervlen::cli::kExitInputError);
  EXPECT_EQ(r.err.rfind("error: matrices", 0), 0u) << r.err;
  EXPECT_EQ(invoke({"length"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"--help"}).code, pervlen::cli::kExitOk);
}

TEST(CliStratify, MatchesGoldenFiles) {
  for (int k = 1; k <= 7; ++k) {
    const auto r = invoke({"stratify", "-k", std::to_string(k)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(std::string(PERVLEN_GOLDEN_DIR) + "/length_ge_" + std::to_string(k) + ".formula"))
        << "k=" << k;
  }
}

TEST(CliStratify, AllWritesDirectoryAndIsDeterministic) {
  const fs::path dir = fs::temp_directory_path() / "pervlen_cli_test" / "strata";
  fs::remove_all(dir);
  ASSERT_EQ(invoke({"stratify", "--all", "-o", dir.string()}).code, 0);
  for (int k = 1; k <= 7; ++k) {
    EXPECT_TRUE(fs::exists(dir / ("length_ge_" + std::to_string(k) + ".formula")));
    EXPECT_TRUE(fs::exists(dir / ("length_eq_" + std::to_string(k) + ".formula")));
  }
  EXPECT_EQ(slurp(dir / "length_ge_4.formula"), invoke({"stratify", "-k", "4"}).out);
  EXPECT_EQ(invoke({"stratify", "--all"}).out, invoke({"stratify", "--all"}).out);
}

TEST(CliStratify, Errors) {
  EXPECT_EQ(invoke({"stratify"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"stratify", "-k", "0"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"stratify", "-k", "2", "--all"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"stratify", "-k", "two"}).code, pervlen::cli::kExitInputError);
}

TEST(CliTori, IntersectTwoPoints) {
  const auto r = invoke({"tori", "intersect", data("tori/t1t2_trivial.json"), data("tori/t1_over_t2_trivial.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# pervlen-torus v1\n", 0), 0u);
  const auto f = scratch_file("two_points.json", r.out);
  EXPECT_EQ(invoke({"tori", "member", f.string(), "0,0"}).out, "# pervlen-member v1\ntrue\n");
  EXPECT_EQ(invoke({"tori", "member", f.string(), "1/2,1/2"}).out, "# pervlen-member v1\ntrue\n");
  EXPECT_EQ(invoke({"tori", "member", f.string(), "1/2,0"}).out, "# pervlen-member v1\nfalse\n");
}

TEST(CliTori, EmptyIntersection) {
  const auto r = invoke({"tori", "intersect", data("tori/t1_trivial.json"), data("tori/t1_minus_one.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"components\":[]"), std::string::npos) << r.out;
}

TEST(CliTori, JumpLocus) {
  const auto r = invoke({"tori", "jump-locus", "-n", "2", "-k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = scratch_file("jump.json", r.out);
  EXPECT_EQ(invoke({"tori", "member", f.string(), "0,0"}).out, "# pervlen-member v1\ntrue\n");
  EXPECT_EQ(invoke({"tori", "member", f.string(), "0,1/3"}).out, "# pervlen-member v1\nfalse\n");
  EXPECT_EQ(invoke({"tori", "jump-locus", "-n", "0", "-k", "1"}).code, pervlen::cli::kExitInputError);
}

TEST(CliTori, Errors) {
  EXPECT_EQ(invoke({"tori", "member", data("tori/t1_trivial.json"), "0"}).code, pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"tori", "member", data("tori/t1_trivial.json"), "1/0,0"}).code, pervlen::cli::kExitInputError);
  const auto big = scratch_file("big.json", "{\"equations\": [[101, 0], [0, 101]], \"rhs\": [\"0\", \"0\"]}");
  const auto r = invoke({"tori", "intersect", big.string(), big.string()});
  EXPECT_EQ(r.code, pervlen::cli::kExitInputError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  const auto rank3 = scratch_file("rank3.json", "{\"equations\": [[1, 0, 0]], \"rhs\": [\"0\"]}");
  EXPECT_EQ(invoke({"tori", "intersect", rank3.string(), data("tori/t1_trivial.json")}).code,
            pervlen::cli::kExitInputError);
  EXPECT_EQ(invoke({"tori"}).code, pervlen::cli::kExitInputError);
}

TEST(CliVerify, PrintsSevenLinesAndPasses) {
  const auto r = invoke({"verify-paper"});
  EXPECT_EQ(r.code, pervlen::cli::kExitOk) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  int criteria = 0;
  while (std::getline(lines, line))
    if (line.rfind("PASS ", 0) == 0 || line.rfind("FAIL ", 0) == 0) ++criteria;
  EXPECT_EQ(criteria, 7);
  EXPECT_NE(r.out.find("result: PASS (7/7)"), std::string::npos);
}

}  // namespace
