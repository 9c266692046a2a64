#include <gtest/gtest.h>
#include <json.hpp>

#include "cli_runner.hpp"

using coefx::testing::run_cli;
using nlohmann::json;

TEST(Cli, SeriesText) {
  auto r = run_cli("series '1/(2-z)' --order 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "1/2 + 1/4 z + 1/8 z^2 + 1/16 z^3 + O(z^4)\n");
}

TEST(Cli, SeriesJson) {
  auto r = run_cli("--json series 'exp(z/(1-z))' --order 4");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = json::parse(r.output);
  EXPECT_EQ(j["variable"], "z");
  EXPECT_EQ(j["valuation"], 0);
  EXPECT_EQ(j["order"], 4);
  EXPECT_EQ(j["coefficients"], json::parse(R"([["1","1"],["1","1"],["3","2"],["13","6"],["73","24"]])"));
}

TEST(Cli, Coeff) {
  auto r = run_cli("coeff '(1+z)^5' --n 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "10\n");
  auto far = run_cli("coeff '1/(1-z-z^2)' --n 30");
  EXPECT_EQ(far.output, "1346269\n");
}

TEST(Cli, Bracket) {
  auto ok = run_cli("bracket --f 'z^2/(z-1)' --g '1+z+z^2'");
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.output, "2\n");
  auto bad = run_cli("bracket --f '1/(1-z)' --g 1");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.output.find("UnsafeBracket"), std::string::npos) << bad.output;
}

TEST(Cli, Revert) {
  auto r = run_cli("revert 'z - z^2' --order 5");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "z + z^2 + 2 z^3 + 5 z^4 + 14 z^5 + O(z^6)\n");
}

TEST(Cli, ExpandRational) {
  auto r = run_cli("--json expand-rational --num -1 --poles 2 --inner 2 --outer inf --from -4 --to -1");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(json::parse(r.output)["coefficients"], json::parse(R"([["-8","1"],["-4","1"],["-2","1"],["-1","1"]])"));
  auto inside = run_cli("expand-rational --num z --poles 1 --inner 0 --outer 1 --from 0 --to 0");
  EXPECT_EQ(inside.output, "0 0\n");
  auto outside = run_cli("expand-rational --num z --poles 1 --inner 1 --outer inf --from 0 --to 0");
  EXPECT_EQ(outside.output, "0 1\n");
  auto pole = run_cli("expand-rational --poles 2 --inner 1 --outer 3");
  EXPECT_EQ(pole.exit_code, 1);
}

TEST(Cli, Identity) {
  auto r = run_cli("--json identity dixon --max 3");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = json::parse(r.output);
  EXPECT_EQ(j["checked"], 64);
  EXPECT_TRUE(j["failures"].empty());
  auto s = run_cli("identity saalschutz --max 2");
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_EQ(s.output, "saalschutz: checked 81 cases over [0,2], 0 failures\n");
  auto g = run_cli("--json identity gessel-stanton --max 2");
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_EQ(json::parse(g.output)["checked"], 1 + 81 + 27);
}

TEST(Cli, Coupon) {
  auto r = run_cli("coupon --probs 1/3,1/3,1/3 --n 3 --method all");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = json::parse(r.output);
  EXPECT_EQ(j["expected"], json::parse(R"(["11","2"])"));
  EXPECT_EQ(j["methods_agree"], true);
  auto bad = run_cli("coupon --probs 1/2,1/3 --n 1");
  EXPECT_EQ(bad.exit_code, 1);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run_cli("series 'z^-'").exit_code, 2);
  EXPECT_EQ(run_cli("series").exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(run_cli("coupon --probs 1 --n 1 --method guess").exit_code, 2);
  EXPECT_EQ(run_cli("series 'log(z)'").exit_code, 1);
}
