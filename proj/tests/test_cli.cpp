#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "rtp/report.hpp"

namespace rtp {
namespace {

const std::string kCli = RTP_CLI_PATH;
const std::string kJobs = RTP_JOBS_DIR;

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "rtp_cli_" + name; }

int run_cli(const std::string& args, const std::string& stdout_path = "/dev/null") {
  int status = std::system((kCli + " " + args + " > " + stdout_path + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Serialization, CertificateRoundTrip) {
  RationalMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 3;
  m(1, 0) = 1;
  m(1, 1) = 2;
  Certificate c = check_minors(m, 2, "tp");
  ASSERT_FALSE(c.pass);
  c.bindings["q"] = "1/2";
  Json j = to_json(c);
  EXPECT_EQ(j.at("verdict"), "fail");
  EXPECT_EQ(j.at("size"), Json::array({2, 2}));
  Certificate back = certificate_from_json(j);
  EXPECT_EQ(back.property, c.property);
  EXPECT_EQ(back.witness->rows, c.witness->rows);
  EXPECT_EQ(back.witness->value, c.witness->value);
  EXPECT_EQ(back.bindings, c.bindings);
  EXPECT_TRUE(revalidate(m, back));
}

TEST(Serialization, RationalsAndPolys) {
  EXPECT_EQ(to_json(make_rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_json(Rational(5)), "5");
  Poly p = Poly::variable("q", {"lambda", "q"}) * Rational(3) + Poly(make_rational(1, 2));
  EXPECT_EQ(poly_from_json(to_json(p)), p);
  EXPECT_EQ(poly_from_json(Json("7/3")), Poly(make_rational(7, 3)));
  EXPECT_THROW(rational_from_json(Json(1.5)), parse_error);
}

TEST(Jobs, ShapesAgree) {
  Json task{{"family", "eulerian"}, {"N", 5}, {"checks", {{{"kind", "tp"}, {"r", 3}}}}};
  Json a = run_job(task).report;
  Json b = run_job(Json::array({task})).report;
  Json c = run_job(Json{{"tasks", {task}}}).report;
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.at("schema"), kReportSchema);
  EXPECT_EQ(a.at("summary").at("verdict"), "pass");
}

TEST(Jobs, MalformedAndDomainErrors) {
  EXPECT_THROW(run_job(Json{{"checks", Json::array()}}), parse_error);
  EXPECT_THROW(run_job(Json{{"sequence", {1, 2}}, {"checks", {{{"kind", "bogus"}}}}}), parse_error);
  EXPECT_THROW(run_job(Json{{"family", "nosuch"}}), domain_error);
  EXPECT_THROW(run_job(Json{{"family", "gen_lah"}, {"a", "1/2"}}), domain_error);
  EXPECT_THROW(run_job(Json{{"sequence", {1, 2}}, {"checks", {{{"kind", "production"}}}}}), domain_error);
}

TEST(Jobs, SymbolicParametersStaySymbolic) {
  Json task{{"family", "gen_bessel2"}, {"lambda", "sym"}, {"N", 4}, {"emit", {"row_polys"}}};
  Json rep = run_job(task).report;
  Poly row2 = poly_from_json(rep.at("tasks")[0].at("data").at("row_polys")[2]);
  EXPECT_FALSE(row2.is_constant());
}

// Each failing check kind yields a witness that survives a reload from JSON.
TEST(Revalidation, EveryFailingKindRevalidates) {
  Json job = Json::array({
      {{"sequence", {1, 2, 3}}, {"checks", {{{"kind", "sm"}, {"r", 2}}}}},
      {{"sequence", {1, 2, 3, 5, 8, 13, 21}}, {"checks", {{{"kind", "hankel"}, {"r", 2}, {"window", 2}}, {{"kind", "klogconvex"}, {"k", 1}}}}},
      {{"sequence", {1, 1, 3}}, {"checks", {{{"kind", "toeplitz"}, {"r", 2}}}}},
      {{"family", "lah"}, {"N", 5}, {"checks", {{{"kind", "real-roots"}, {"lambda", 1}}}}},
      {{"era", {{"g", "exp(-t)"}, {"f", "t"}}}, {"N", 8}, {"checks", {{{"kind", "sm-probe"}, {"r", 3}, {"size", 5}}, {{"kind", "tp"}, {"r", 2}}}}},
  });
  JobRun run = run_job(job);
  EXPECT_FALSE(run.all_pass);
  std::size_t failing_checks = 0;
  for (const auto& task : run.report.at("tasks"))
    for (const auto& check : task.at("checks")) {
      bool any = false;
      for (const auto& cert : check.at("certificates")) any |= cert.at("verdict") == "fail";
      failing_checks += any;
    }
  EXPECT_EQ(failing_checks, 7u);
  Json reloaded = Json::parse(run.report.dump(2));
  RevalidationResult res = revalidate_report(job, reloaded);
  EXPECT_TRUE(res.ok()) << (res.problems.empty() ? "" : res.problems.front());
  EXPECT_GT(res.checked, 7u);
  EXPECT_EQ(res.confirmed, res.checked);
}

TEST(Revalidation, TamperedWitnessIsRejected) {
  Json job{{"sequence", {1, 2, 3}}, {"checks", {{{"kind", "sm"}, {"r", 2}}}}};
  Json rep = run_job(job).report;
  auto& w = rep.at("tasks")[0].at("checks")[0].at("certificates")[0].at("witness");
  w["rows"] = Json::array({1});
  w["cols"] = Json::array({0});
  RevalidationResult res = revalidate_report(job, rep);
  EXPECT_FALSE(res.ok());
  EXPECT_EQ(res.confirmed, 0u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify " + kJobs + "/eulerian_tp3.json"), 0);
  EXPECT_EQ(run_cli("verify " + kJobs + "/sequence_sm_fails.json"), 1);
  const std::string bad = temp_path("bad.json");
  write_file(bad, "{\"family\": ");
  EXPECT_EQ(run_cli("verify " + bad), 2);
  EXPECT_EQ(run_cli("verify /nonexistent/job.json"), 2);
  EXPECT_EQ(run_cli("tpcheck --bind x"), 2);
  EXPECT_EQ(run_cli("hankel --seq 1,2,x"), 2);
  EXPECT_EQ(run_cli("tpcheck nosuch"), 3);
  EXPECT_EQ(run_cli("tpcheck gen_lah --bind a=-1"), 3);
  EXPECT_EQ(run_cli("tpcheck eulerian --order 7 -r 3"), 0);
  EXPECT_EQ(run_cli("hankel --seq 1,2,3 -r 2"), 1);
  EXPECT_EQ(run_cli("hankel rook --order 8 --coeffwise -r 2 --size 4 -k 3"), 0);
  EXPECT_EQ(run_cli("cf --schedule lah --bind a=1 --bind q=sym --order 6"), 0);
  EXPECT_EQ(run_cli("prodmat gen_bessel1 --bind lambda=sym --order 6"), 0);
  EXPECT_EQ(run_cli("conv pascal --order 8 --size 5 -r 3"), 0);
  EXPECT_EQ(run_cli("triangle callan_h --order 5 --verify"), 0);
}

TEST(Cli, FailingReportIsWrittenAndRevalidates) {
  const std::string report = temp_path("fail_report.json");
  std::remove(report.c_str());
  EXPECT_EQ(run_cli("verify " + kJobs + "/sm_probes.json --out " + report), 1);
  Json rep = Json::parse(slurp(report));
  EXPECT_EQ(rep.at("summary").at("verdict"), "fail");
  EXPECT_EQ(run_cli("verify " + kJobs + "/sm_probes.json --revalidate " + report), 0);
}

TEST(Cli, ReportsAreByteIdentical) {
  for (const std::string job : {"mixed.json", "production.json", "sm_probes.json"}) {
    const std::string a = temp_path("a.json"), b = temp_path("b.json");
    run_cli("verify " + kJobs + "/" + job + " --json", a);
    run_cli("verify " + kJobs + "/" + job + " --json", b);
    const std::string ta = slurp(a);
    EXPECT_FALSE(ta.empty()) << job;
    EXPECT_EQ(ta, slurp(b)) << job;
  }
}

TEST(Cli, SampleJobsRunClean) {
  for (const std::string job : {"eulerian_tp3.json", "rook_hankel.json", "lah_cf.json", "production.json", "mixed.json"})
    EXPECT_EQ(run_cli("verify " + kJobs + "/" + job), 0) << job;
}

}  // namespace
}  // namespace rtp
