#include <gtest/gtest.h>

#include "bsgen/cli.hpp"

using namespace bsgen;

namespace {

JobSpec job(const std::string& cmd, std::vector<std::string> f, std::vector<std::string> vars = {"x"},
            std::vector<std::string> params = {}) {
  JobSpec j;
  j.command = cmd;
  j.f = std::move(f);
  j.vars = std::move(vars);
  j.params = std::move(params);
  return j;
}

}  // namespace

TEST(Cli, BernsteinPolynomialReport) {
  auto r = run_command(job("bs", {"x^2"}));
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["schema"], "bsgen-report/1");
  EXPECT_EQ(r.report["status"], "ok");
  EXPECT_EQ(r.report["result"]["bernstein_polynomial"], "s^2 + 3/2*s + 1/2");
  EXPECT_EQ(r.report["result"]["generators"][0]["certificate_P"], "1/4*Dx^2");
  EXPECT_TRUE(r.report["verification"]["verified"].get<bool>());
}

TEST(Cli, StratifyQuadraticFamily) {
  auto r = run_command(job("stratify", {"x^2+a"}, {"x"}, {"a"}));
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump(2);
  const auto& strata = r.report["result"]["strata"];
  ASSERT_EQ(strata.size(), 2u);
  EXPECT_EQ(strata[0]["b"], "s + 1");
  EXPECT_EQ(strata[1]["b"], "s^2 + 3/2*s + 1/2");
  EXPECT_EQ(strata[1]["pieces"][0]["closed"][0], "a");
}

TEST(Cli, StratifyLocatesPoints) {
  auto j = job("stratify", {"x^2+a"}, {"x"}, {"a"});
  j.points = {{"0"}, {"-1/2"}};
  auto r = run_command(j);
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto& pts = r.report["result"]["points"];
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0]["b"], "s^2 + 3/2*s + 1/2");
  EXPECT_EQ(pts[1]["b"], "s + 1");
  EXPECT_TRUE(pts[1]["passed"].get<bool>());
}

TEST(Cli, GenericOnVanishingFibreIsAnInputError) {
  auto j = job("generic-bs", {"a*x"}, {"x"}, {"a"});
  j.ideal = {"a"};
  auto r = run_command(j);
  EXPECT_EQ(r.exit_code, kExitInput);
  EXPECT_EQ(r.report["error"]["code"], "FamilyVanishesModQ");
  EXPECT_EQ(r.report["status"], "error");
}

TEST(Cli, SyntaxErrorsExitWithInputCode) {
  auto r = run_command(job("bs", {"x^"}));
  EXPECT_EQ(r.exit_code, kExitInput);
  EXPECT_EQ(r.report["error"]["code"], "SyntaxError");
  auto u = run_command(job("bs", {"y+1"}));
  EXPECT_EQ(u.report["error"]["code"], "UndeclaredVariable");
}

TEST(Cli, BudgetExhaustionGivesPartialReport) {
  auto j = job("bs", {"x^3+y^3+x*y*z+z^4"}, {"x", "y", "z"});
  j.budgets.groebner.max_steps = 200;
  auto r = run_command(j);
  EXPECT_EQ(r.exit_code, kExitBudget);
  EXPECT_EQ(r.report["status"], "budget-exhausted");
  EXPECT_TRUE(r.report["partial"].get<bool>());
  EXPECT_EQ(r.report["error"]["code"], "TimeoutBudget");
}

TEST(Cli, VerifyCommand) {
  auto j = job("verify", {"x^2"});
  j.b = "(s+1)*(s+1/2)";
  j.op = "1/4*Dx^2";
  EXPECT_EQ(run_command(j).exit_code, kExitOk);
  j.op = "Dx^2";
  EXPECT_EQ(run_command(j).exit_code, kExitVerifyFailed);
}

TEST(Cli, ReportsAreDeterministic) {
  auto j = job("stratify", {"a*x^2+c"}, {"x"}, {"a", "c"});
  auto first = run_command(j).report.dump();
  EXPECT_EQ(first, run_command(j).report.dump());
}

TEST(Cli, JobFilesRoundTrip) {
  auto spec = json::parse(R"({"command":"bs","vars":["x","y"],"f":["x*y"],"budgets":{"steps":100000}})");
  auto j = job_from_json(spec);
  EXPECT_EQ(j.budgets.groebner.max_steps, 100000u);
  auto r = run_command(j);
  EXPECT_EQ(r.report["result"]["bernstein_polynomial"], "s^2 + 2*s + 1");
  EXPECT_THROW(job_from_json(json::parse(R"({"f": 3})")), Error);
}

TEST(Cli, TextRendering) {
  auto r = run_command(job("bs", {"x"}));
  auto text = render_text(r.report);
  EXPECT_NE(text.find("s + 1"), std::string::npos);
  EXPECT_NE(text.find("ok"), std::string::npos);
}

TEST(Cli, FamilyCommand) {
  JobSpec j;
  j.command = "family";
  j.family_n = 1;
  j.family_p = 1;
  j.family_d = 2;
  auto r = run_command(j);
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump(2);
  EXPECT_EQ(r.report["result"]["params"].size(), 3u);
}
