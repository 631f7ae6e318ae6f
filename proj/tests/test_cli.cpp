#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "vpf/cli.hpp"

using namespace vpf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("vpf_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string golden(const std::string& name) { return std::string(VPF_SOURCE_DIR) + "/data/golden/" + name + ".tex"; }

}  // namespace

TEST(Cli, DecomposeLatexReparsesToTheGeneratingFunction) {
  const Outcome o = run_cli({"decompose", "--type", "A", "--rank", "2", "--format", "latex"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("\\prod_{\\alpha\\in A_2}"), std::string::npos);
  const FractionSum back = parse_decomposition_latex(o.out, 2);
  EXPECT_EQ(series_truncate(back, 0, 8), series_truncate(kostant_input('A', 2), 0, 8));
}

TEST(Cli, LatexRoundTripForEveryStrategy) {
  for (const std::string s : {"minabs", "nbc", "classical"}) {
    const Outcome o = run_cli({"decompose", "--type", "C", "--rank", "3", "--strategy", s});
    ASSERT_EQ(o.code, 0) << s << " " << o.err;
    EXPECT_EQ(series_truncate(parse_decomposition_latex(o.out, 3), 0, 5), series_truncate(kostant_input('C', 3), 0, 5)) << s;
  }
}

TEST(Cli, IndependentVectorsAreEchoed) {
  TempDir dir;
  const std::string file = dir.write("two_independent.txt", "# two vectors\n1 0\n1 1\n");
  const Outcome o = run_cli({"decompose", "--vectors", file, "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = Json::parse(o.out);
  ASSERT_EQ(j.at("fractions").size(), 1u);
  EXPECT_EQ(j.at("stats").at("steps"), 0);
  EXPECT_EQ(j.at("fractions")[0].at("denominators").size(), 2u);
  EXPECT_EQ(j.at("support"), Json::parse("[[1,0],[1,1]]"));
}

TEST(Cli, G2DecompositionPassesItsChecksum) {
  const Outcome o = run_cli({"decompose", "--type", "G", "--rank", "2"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(series_truncate(parse_decomposition_latex(o.out, 2), 0, 8), series_truncate(kostant_input('G', 2), 0, 8));
}

TEST(Cli, EvaluateExamples) {
  Outcome o = run_cli({"evaluate", "--type", "A", "--rank", "2", "--point", "1,1", "--mode", "oracle"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "2\n");
  for (const std::string t : {"A", "B", "G"}) {
    o = run_cli({"evaluate", "--type", t, "--rank", "2", "--point", "0,0"});
    EXPECT_EQ(o.out, "1\n") << t;
  }
  o = run_cli({"evaluate", "--type", "A", "--rank", "2", "--point", "5,3", "--mode", "formula"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "4\n");
  o = run_cli({"evaluate", "--type", "B", "--rank", "3", "--point", "0,0,0", "--mode", "formula"});
  EXPECT_EQ(o.out, "1\n");
}

TEST(Cli, FormulaModeAgreesWithOracle) {
  for (const std::string p : {"7,2", "2,7", "6,6", "0,9", "11,4"}) {
    const Outcome a = run_cli({"evaluate", "--type", "G", "--rank", "2", "--point", p, "--mode", "formula"});
    const Outcome b = run_cli({"evaluate", "--type", "G", "--rank", "2", "--point", p, "--mode", "oracle"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << p;
  }
}

TEST(Cli, PointOutsideTheConeExitsFour) {
  EXPECT_EQ(run_cli({"evaluate", "--type", "A", "--rank", "2", "--point", "-1,2"}).code, 4);
  TempDir dir;
  const std::string file = dir.write("v.txt", "1 1\n1 2\n");
  EXPECT_EQ(run_cli({"evaluate", "--vectors", file, "--point", "1,0", "--mode", "formula"}).code, 4);
}

TEST(Cli, FormulaCacheIsWrittenAndReused) {
  TempDir dir;
  const std::string file = dir.write("b2.json", "[[0,1],[1,0],[1,1],[1,2]]");
  const Outcome first = run_cli({"evaluate", "--vectors", file, "--point", "9,4", "--mode", "formula"});
  ASSERT_EQ(first.code, 0) << first.err;
  const fs::path cache = file + ".chambers.json";
  ASSERT_TRUE(fs::exists(cache));
  const Json j = Json::parse(cli::read_file(cache.string()));
  EXPECT_EQ(j.at("formulas").size(), 3u);
  const Outcome second = run_cli({"evaluate", "--vectors", file, "--point", "9,4", "--mode", "formula"});
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(second.out, run_cli({"evaluate", "--vectors", file, "--point", "9,4"}).out);
  // A damaged cache is rebuilt rather than trusted.
  std::ofstream(cache) << "{not json";
  EXPECT_EQ(run_cli({"evaluate", "--vectors", file, "--point", "9,4", "--mode", "formula"}).out, first.out);
}

TEST(Cli, PeriodExamples) {
  EXPECT_EQ(run_cli({"period", "--type", "A", "--rank", "2"}).out, "1\n");
  const Int b2 = std::stoll(run_cli({"period", "--type", "B", "--rank", "2"}).out);
  EXPECT_EQ(2 % b2, 0);
  const Int g2 = std::stoll(run_cli({"period", "--type", "G", "--rank", "2"}).out);
  EXPECT_EQ(6 % g2, 0);
  EXPECT_EQ(run_cli({"period", "--type", "E", "--rank", "6"}).code, 3);
  EXPECT_EQ(run_cli({"period", "--type", "F", "--rank", "4"}).code, 3);
}

TEST(Cli, BadRankAndBadInputExitCodes) {
  EXPECT_EQ(run_cli({"kostant", "--type", "D", "--rank", "3"}).code, 3);
  EXPECT_EQ(run_cli({"decompose", "--type", "Q", "--rank", "2"}).code, 3);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"evaluate", "--type", "A", "--rank", "2"}).code, 2);
  EXPECT_EQ(run_cli({"evaluate", "--type", "A", "--rank", "2", "--point", "1,2,3"}).code, 2);
  EXPECT_EQ(run_cli({"evaluate", "--type", "A", "--rank", "2", "--point", "1/2,1"}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--type", "A", "--rank", "2", "--strategy", "best"}).code, 2);
  TempDir dir;
  EXPECT_EQ(run_cli({"decompose", "--vectors", dir.write("bad.txt", "1 x\n")}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--vectors", dir.write("ragged.txt", "1 0\n1 1 1\n")}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--vectors", dir.write("neg.txt", "1 0\n-1 1\n")}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--vectors", dir.write("bad.json", "[[1,0],[0,")}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--vectors", (dir.path() / "missing.txt").string()}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--vectors", dir.write("v.txt", "1 0\n"), "--strategy", "classical"}).code, 2);
}

TEST(Cli, VerifyPassesOnRankTwoSystems) {
  Outcome o = run_cli({"verify", "--type", "A", "--rank", "2", "--box", "25"});
  EXPECT_EQ(o.code, 0) << o.out;
  const Json j = Json::parse(o.out);
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("chambers").size(), 2u);
  o = run_cli({"verify", "--type", "B", "--rank", "2", "--box", "20"});
  EXPECT_EQ(o.code, 0) << o.out;
}

TEST(Cli, VerifyAcceptsGoldenAndRejectsCorruptedGolden) {
  EXPECT_EQ(run_cli({"verify", "--type", "B", "--rank", "2", "--golden", golden("b2")}).code, 0);
  std::string text = cli::read_file(golden("b2"));
  // Drop the last fraction line: the sum no longer equals the product.
  const auto end = text.rfind("\\\\");
  const auto start = text.rfind("&&", end);
  ASSERT_NE(start, std::string::npos);
  text.erase(start, end + 2 - start);
  TempDir dir;
  const Outcome o = run_cli({"verify", "--type", "B", "--rank", "2", "--golden", dir.write("b2_bad.tex", text)});
  EXPECT_EQ(o.code, 1);
  const Json j = Json::parse(o.out);
  EXPECT_FALSE(j.at("ok").get<bool>());
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"decompose", "--type", "B", "--rank", "3", "--format", "json"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  const std::vector<std::string> ch{"chambers", "--type", "C", "--rank", "3", "--format", "json"};
  EXPECT_EQ(run_cli(ch).out, run_cli(ch).out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "2"});
  EXPECT_EQ(run_cli(threaded).out, run_cli(args).out);
}

TEST(Cli, ChambersAndKostantJson) {
  const Json ch = Json::parse(run_cli({"chambers", "--type", "B", "--rank", "2", "--format", "json"}).out);
  EXPECT_EQ(ch.at("chambers").size(), 3u);
  for (const auto& c : ch.at("chambers")) EXPECT_EQ(cone_from_json(c, 2).generators.size(), 2u);
  const Json k = Json::parse(run_cli({"kostant", "--type", "G", "--rank", "2", "--format", "json"}).out);
  EXPECT_EQ(k.at("positive_roots").size(), 6u);
  EXPECT_EQ(k.at("type"), "G");
}

TEST(Cli, FormulaJsonRoundTrip) {
  const auto vs = positive_roots('B', 2).positive_roots;
  for (const auto& cf : all_chamber_formulas(vs, Strategy::min_abs())) {
    const ChamberFormula back = chamber_formula_from_json(Json::parse(to_json(cf).dump()));
    EXPECT_EQ(back.chamber, cf.chamber);
    EXPECT_EQ(back.indicator, cf.indicator);
    EXPECT_TRUE(quasipoly_equal(back.formula, cf.formula));
  }
}
