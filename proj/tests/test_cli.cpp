#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "invmf/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "invmf");
  std::ostringstream out, err;
  const int code = invmf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> keys(const invmf::cli::Json& j) {
  std::vector<std::string> out;
  for (const auto& item : j.items()) out.push_back(item.key());
  return out;
}

}  // namespace

TEST(Cli, InvertExamples) {
  EXPECT_EQ(run({"invert", "--function", "phi", "--aggregate", "count", "--n", "4!"}).out, "10\n");
  EXPECT_EQ(run({"invert", "--function", "sigma", "--aggregate", "set", "--n", "12"}).out, "[6, 11]\n");
  EXPECT_EQ(run({"--n", "24"}).out, "[35, 39, 45, 52, 56, 70, 72, 78, 84, 90]\n");
  EXPECT_EQ(run({"--function", "sigma", "--k", "2", "--n", "10"}).out, "[3]\n");
}

TEST(Cli, EmptyPreimages) {
  EXPECT_EQ(run({"--n", "14"}).out, "EMPTY\n");
  EXPECT_EQ(run({"--n", "14", "--aggregate", "min"}).out, "EMPTY\n");
  EXPECT_EQ(run({"--n", "14", "--aggregate", "count"}).out, "0\n");
  const auto outcome = run({"--n", "14", "--aggregate", "max", "--format", "json"});
  EXPECT_EQ(outcome.code, 0);
  const auto j = invmf::cli::Json::parse(outcome.out);
  EXPECT_TRUE(j["result"].is_null());
  EXPECT_EQ(invmf::cli::Json::parse(run({"--n", "14", "--format", "json"}).out)["result"], invmf::cli::Json::array());
}

TEST(Cli, JsonLayoutIsStable) {
  const auto j = invmf::cli::Json::parse(run({"invert", "--n", "24", "--aggregate", "set", "--format", "json"}).out);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"n", "function", "aggregate", "result", "count_ops", "elapsed_ms"}));
  EXPECT_EQ(j["n"], "24");
  EXPECT_EQ(j["function"], "phi");
  EXPECT_EQ(j["aggregate"], "set");
  EXPECT_EQ(j["result"], (invmf::cli::Json{"35", "39", "45", "52", "56", "70", "72", "78", "84", "90"}));
  EXPECT_EQ(keys(j["count_ops"]), (std::vector<std::string>{"mul", "add", "atomic_series", "divisors", "pair_bound"}));

  const auto s = invmf::cli::Json::parse(
      run({"--function", "sigma", "--k", "1", "--n", "12", "--aggregate", "sumpow:2", "--format", "json"}).out);
  EXPECT_EQ(keys(s), (std::vector<std::string>{"n", "function", "k", "aggregate", "result", "count_ops", "elapsed_ms"}));
  EXPECT_EQ(s["aggregate"], "sumpow:2");
  EXPECT_EQ(s["result"], "157");  // 6^2 + 11^2
}

TEST(Cli, AllDivisors) {
  EXPECT_EQ(run({"--n", "4", "--all-divisors"}).out, "1: [1, 2]\n2: [3, 4, 6]\n4: [5, 8, 10, 12]\n");
  const auto j = invmf::cli::Json::parse(run({"--n", "6", "--all-divisors", "--aggregate", "count", "--format", "json"}).out);
  ASSERT_EQ(j["divisors"].size(), 4u);
  EXPECT_EQ(j["divisors"][2]["d"], "3");
  EXPECT_EQ(j["divisors"][2]["result"], "0");
  EXPECT_EQ(j["divisors"][3]["result"], "4");  // phi^-1(6) = {7, 9, 14, 18}
}

TEST(Cli, TableOfMinimalTotientInverses) {
  const auto outcome = run({"table", "--family", "factorial", "--from", "1", "--to", "6", "--function", "phi",
                            "--aggregate", "min"});
  EXPECT_EQ(outcome.code, 0);
  EXPECT_EQ(outcome.out, "1\t1\n2\t3\n3\t7\n4\t35\n5\t143\n6\t779\n");

  const auto j = invmf::cli::Json::parse(
      run({"table", "--family", "primorial", "--from", "1", "--to", "3", "--function", "sigma", "--aggregate", "set",
           "--format", "json"})
          .out);
  EXPECT_EQ(j["family"], "primorial");
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][2]["n"], "30");
  EXPECT_EQ(j["rows"][0]["result"], invmf::cli::Json::array());  // sigma(m) = 2 has no solution
  EXPECT_EQ(j["rows"][1]["result"], (invmf::cli::Json{"5"}));
  EXPECT_EQ(j["rows"][2]["result"], (invmf::cli::Json{"29"}));  // sigma(29) = 30
}

TEST(Cli, Power10Family) {
  const auto outcome = run({"table", "--family", "power10", "--from", "0", "--to", "3", "--aggregate", "count"});
  // phi^-1(1000) = {1111, 1255, 1375, 1875, 2008, 2222, 2500, 2510, 2750, 3012, 3750}.
  EXPECT_EQ(outcome.out, "0\t2\n1\t2\n2\t4\n3\t11\n");
}

TEST(Cli, OracleSubcommand) {
  EXPECT_EQ(run({"oracle", "--n", "24"}).out, "[35, 39, 45, 52, 56, 70, 72, 78, 84, 90]\n");
  EXPECT_EQ(run({"oracle", "--n", "14"}).out, "EMPTY\n");
  EXPECT_EQ(run({"oracle", "--n", "12", "--function", "sigma"}).out, "[6, 11]\n");
  const auto j = invmf::cli::Json::parse(run({"oracle", "--n", "2", "--bound", "8", "--format", "json"}).out);
  EXPECT_EQ(j["bound"], "8");
  EXPECT_EQ(j["result"], (invmf::cli::Json{"3", "4", "6"}));
}

TEST(Cli, StatsGoToStderr) {
  const auto outcome = run({"--n", "24", "--aggregate", "count", "--stats"});
  EXPECT_EQ(outcome.out, "10\n");
  EXPECT_NE(outcome.err.find("mul="), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--bogus"}).code, 1);
  EXPECT_EQ(run({"--n", "2^4*4"}).code, 1);
  EXPECT_EQ(run({"--n", "12", "--aggregate", "median"}).code, 1);
  EXPECT_EQ(run({"--n", "12", "--function", "tau"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"table", "--family", "fibonacci", "--from", "1", "--to", "2"}).code, 1);
  const auto limit = run({"--n", "10000!", "--aggregate", "count"});
  EXPECT_EQ(limit.code, 2);
  EXPECT_NE(limit.err.find("exceeds"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}
