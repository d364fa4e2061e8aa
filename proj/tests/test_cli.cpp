#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "paircorr_cli.hpp"

using paircorr::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "paircorr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("paircorr_test_" + name);
}

}  // namespace

TEST(Cli, GenVdcGrid) {
  auto r = cli({"gen", "--seq", "vdc", "--base", "2", "-n", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x\n0\n0.5\n0.25\n0.75\n0.125\n0.625\n0.375\n0.875\n");
}

TEST(Cli, GenGoldenThree) {
  auto r = cli({"gen", "--seq", "kronecker", "--z", "golden", "-n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x\n0\n0.61803398874989484821\n0.23606797749978969641\n");
}

TEST(Cli, GenIsDeterministic) {
  auto a = cli({"gen", "--seq", "iid", "--seed", "1", "-n", "5"});
  auto b = cli({"gen", "--seq", "iid", "--seed", "1", "-n", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
}

TEST(Cli, GenRespectsCap) {
  auto r = cli({"--max-points", "10", "gen", "-n", "11"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("max-points"), std::string::npos);
}

TEST(Cli, FstatGolden) {
  auto r = cli({"fstat", "--seq", "kronecker", "-n", "987", "--alpha", "1", "--s", "0.5"});
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "sequence,params,N,alpha,s,threshold,count,F,abs_err_vs_2s,ambiguous");
  EXPECT_EQ(row.rfind("kronecker,z=golden,987,1,0.5,", 0), 0u);
  EXPECT_NE(row.find(",0,0,1,0"), std::string::npos) << row;
}

TEST(Cli, FstatVdcWithinBound) {
  auto r = cli({"--format", "text", "fstat", "--seq", "vdc", "-n", "1024", "--alpha", "0.5", "--s", "1"});
  EXPECT_EQ(r.code, 0);
  const auto pos = r.out.find("F=");
  ASSERT_NE(pos, std::string::npos);
  const double f = std::stod(r.out.substr(pos + 2));
  EXPECT_GE(f, 2 - 2.0 / 32);
  EXPECT_LE(f, 2.0);
}

TEST(Cli, FstatDefaultGridGolden) {
  auto r = cli({"--max-points", "2000", "fstat"});
  EXPECT_EQ(r.code, 0);
  // q_10..q_16 = 89..1597 under the cap, 5 alphas x 4 s values each
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 7 * 20);
}

TEST(Cli, FstatFileRoundTrip) {
  const auto path = temp_file("pts.csv");
  auto g = cli({"--out", path.string(), "gen", "--seq", "iid", "--seed", "9", "-n", "3000"});
  ASSERT_EQ(g.code, 0);
  auto from_file = cli({"fstat", "--input", path.string(), "--alpha", "0.5,1", "--s", "1"});
  auto direct = cli({"fstat", "--seq", "iid", "--seed", "9", "-n", "3000", "--alpha", "0.5,1", "--s", "1"});
  ASSERT_EQ(from_file.code, 0);
  ASSERT_EQ(direct.code, 0);
  // same numbers, different sequence/params columns
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(line.find(',', line.find(',') + 1)) + "\n";
    return out;
  };
  EXPECT_EQ(strip(from_file.out), strip(direct.out));
  std::filesystem::remove(path);
}

TEST(Cli, FstatBinaryRoundTripWide) {
  const auto path = temp_file("pts.bin");
  ASSERT_EQ(cli({"--precision", "128", "--out", path.string(), "gen", "--binary", "--seq", "iid", "-n", "500"}).code, 0);
  EXPECT_EQ(std::filesystem::file_size(path), 500u * 16u);
  auto a = cli({"--precision", "128", "fstat", "--input", path.string(), "--binary", "--alpha", "1", "--s", "1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find(",500,1,1,"), std::string::npos) << a.out;
  std::filesystem::remove(path);
}

TEST(Cli, OutputIsByteIdentical) {
  const auto p1 = temp_file("a.csv"), p2 = temp_file("b.csv");
  for (const auto& p : {p1, p2})
    ASSERT_EQ(cli({"--out", p.string(), "fstat", "--seq", "iid", "--seed", "3", "-n", "100,1000"}).code, 0);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_FALSE(slurp(p1).empty());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Cli, Gaps) {
  auto r = cli({"gaps", "--z", "golden", "-n", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("census,L2,0.14589803375031545538,2691343689449507774,2"), std::string::npos) << r.out;
  auto t = cli({"--format", "text", "gaps", "-n", "987"});
  EXPECT_NE(t.out.find("distinct gap lengths: 2"), std::string::npos) << t.out;
}

TEST(Cli, Cf) {
  EXPECT_EQ(cli({"--format", "text", "cf", "355/113"}).out.substr(0, 11), "[3; 7, 16]\n");
  auto g = cli({"cf", "golden", "--terms", "5"});
  EXPECT_EQ(g.out, "i,a,p,q\n0,1,1,1\n1,1,2,1\n2,1,3,2\n3,1,5,3\n4,1,8,5\n");
  EXPECT_EQ(cli({"--format", "text", "cf", "7"}).out.substr(0, 4), "[7]\n");
  EXPECT_EQ(cli({"cf", "1/0"}).code, 2);
}

TEST(Cli, Ostrowski) {
  auto r = cli({"--format", "text", "ostrowski", "12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12 = 8 + 3 + 1\n1@6, 1@4, 1@2\n");
  auto big = cli({"ostrowski", "1000000000000"});
  EXPECT_EQ(big.code, 0);
  EXPECT_EQ(cli({"ostrowski", "0"}).code, 2);
  EXPECT_EQ(cli({"ostrowski", "twelve"}).code, 2);
}

TEST(Cli, VerifySuites) {
  auto r = cli({"verify", "lemma12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "suite,description,expected,observed,tolerance,pass");
  EXPECT_EQ(cli({"verify", "lemma11"}).code, 0);
  EXPECT_EQ(cli({"verify", "threegap"}).code, 0);
  EXPECT_EQ(cli({"verify", "lemma9"}).code, 0);
}

TEST(Cli, VerifyFailureExitsOne) {
  // the window-composition suite reports counts outside {g, g+1}
  EXPECT_EQ(cli({"verify", "lemma10"}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"verify", "nosuch"}).code, 2);
  EXPECT_EQ(cli({"--precision", "32", "cf", "golden"}).code, 2);
  EXPECT_EQ(cli({"--format", "xml", "cf", "golden"}).code, 2);
  EXPECT_EQ(cli({"gen", "--seq", "halton", "-n", "4"}).code, 2);
  EXPECT_EQ(cli({"fstat", "--seq", "iid"}).code, 2);  // no default N for iid
  EXPECT_EQ(cli({"fstat", "-n", "100", "--alpha", "0"}).code, 2);
  EXPECT_EQ(cli({"--out", "/nonexistent/dir/file.csv", "cf", "golden"}).code, 2);
  EXPECT_EQ(cli({"gen", "--z", "0.41", "-n", "4"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fstat"), std::string::npos);
}
