#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "zetamix/distributions.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/mixing_densities.hpp"

namespace zm = zetamix;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "zetamix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = zm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_path(const std::string& name) {
  return fs::path(::testing::TempDir()) / ("zetamix_cli_" + name);
}

}  // namespace

TEST(CliEval, ZetaPmfRow) {
  const auto r = run_cli({"eval", "--kind", "zeta-pmf", "--s", "2", "--x", "0"});
  EXPECT_EQ(r.code, zm::cli::kOk);
  EXPECT_EQ(r.out, "point,value\n0,0.60792710185402665\n");
}

TEST(CliEval, MatchesLibraryBitForBit) {
  const auto r = run_cli({"eval", "--kind", "mixing-r1", "--s", "2", "--p", "0.5,0.125"});
  ASSERT_EQ(r.code, zm::cli::kOk);
  EXPECT_EQ(r.out, "point,value\n0.5," + zm::cli::format_number(zm::mixing_pdf_r1(0.5, 2.0)) +
                       "\n0.125," +
                       zm::cli::format_number(zm::mixing_pdf_r1(0.125, 2.0)) + "\n");
  const double back = std::stod(r.out.substr(r.out.find("0.5,") + 4));
  EXPECT_EQ(back, zm::mixing_pdf_r1(0.5, 2.0));
}

TEST(CliEval, DomainErrorExitsTwoWithOneLine) {
  const auto r = run_cli({"eval", "--kind", "mixing-r1", "--s", "0.9", "--p", "0.5"});
  EXPECT_EQ(r.code, zm::cli::kUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("s > 1"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(CliEval, UsageErrors) {
  EXPECT_EQ(run_cli({"eval", "--kind", "no-such-kind", "--s", "2", "--x", "0"}).code,
            zm::cli::kUsage);
  EXPECT_EQ(run_cli({"eval", "--s", "2", "--x", "0"}).code, zm::cli::kUsage);
  EXPECT_EQ(run_cli({"eval", "--kind", "mixing-r1", "--s", "2", "--p", "1.5"}).code,
            zm::cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, zm::cli::kUsage);
  EXPECT_EQ(run_cli({}).code, zm::cli::kUsage);
}

TEST(CliEval, NonConvergenceExitsThree) {
  const auto r = run_cli({"eval", "--kind", "nb-mixture", "--r", "2.5", "--s", "2", "--x",
                          "3", "--abs-tol", "1e-300", "--rel-tol", "1e-300"});
  EXPECT_EQ(r.code, zm::cli::kNonConvergence) << r.err;
}

TEST(CliEval, NoLocaleDependence) {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (!std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) GTEST_SKIP() << "locale not installed";
  const auto r = run_cli({"eval", "--kind", "zeta-pmf", "--s", "2", "--x", "1"});
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(r.out, "point,value\n1,0.15198177546350666\n");
}

TEST(CliFormat, SeventeenSignificantDigits) {
  EXPECT_EQ(zm::cli::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(zm::cli::format_number(1.0), "1");
  EXPECT_EQ(zm::cli::format_number(1e-20), "9.9999999999999995e-21");
  for (double v : {1e-20, 3.14159, 6.02e23, -2.5e-300}) {
    EXPECT_EQ(std::stod(zm::cli::format_number(v)), v);
  }
}

TEST(CliTabulate, LinearAndLog) {
  const auto lin = run_cli({"tabulate", "--kind", "nb-pmf", "--r", "1", "--p", "0.3",
                            "--from", "0", "--to", "2", "--points", "3"});
  ASSERT_EQ(lin.code, zm::cli::kOk) << lin.err;
  EXPECT_EQ(lin.out, "point,value\n0," +
                         zm::cli::format_number(zm::nb_pmf(0, zm::NbParams(1, 0.3))) + "\n1," +
                         zm::cli::format_number(zm::nb_pmf(1, zm::NbParams(1, 0.3))) +
                         "\n2," +
                         zm::cli::format_number(zm::nb_pmf(2, zm::NbParams(1, 0.3))) + "\n");
  const auto lg = run_cli({"tabulate", "--kind", "mixing-quasi", "--r", "0.5", "--s", "2",
                           "--from", "1e-6", "--to", "0.9", "--points", "5", "--spacing",
                           "log"});
  ASSERT_EQ(lg.code, zm::cli::kOk) << lg.err;
  EXPECT_EQ(std::count(lg.out.begin(), lg.out.end(), '\n'), 6);
  EXPECT_NE(lg.out.find(",-"), std::string::npos);
}

TEST(CliVerify, ConfigParsing) {
  const auto cfg = zm::cli::parse_verify_config(
      "# small grid\n"
      "abs_tol = 1e-11\n"
      "threads = 2\n"
      "grid.yule_mixture.b = 0.5\n"
      "grid.yule_mixture.b = 2.5   # repeats append\n"
      "grid.yule_mixture.x = 0..3, 7\n"
      "grid.gamma_poisson.x = 1\n");
  EXPECT_DOUBLE_EQ(cfg.spec.abs_tol, 1e-11);
  EXPECT_EQ(cfg.threads, 2u);
  ASSERT_EQ(cfg.grid.identities.size(), 2u);
  // Canonical order, not file order.
  EXPECT_EQ(cfg.grid.identities[0].identity, zm::Identity::kGammaPoisson);
  const auto& yule = cfg.grid.identities[1];
  EXPECT_EQ(yule.b, (std::vector<double>{0.5, 2.5}));
  EXPECT_EQ(yule.x, (std::vector<zm::Count>{0, 1, 2, 3, 7}));
}

TEST(CliVerify, ConfigErrorsNameTheLine) {
  try {
    zm::cli::parse_verify_config("abs_tol = 1e-9\nbogus = 3\n");
    FAIL();
  } catch (const zm::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(zm::cli::parse_verify_config("grid.nope.x = 1\n"), zm::DomainError);
  EXPECT_THROW(zm::cli::parse_verify_config("grid.moment.q = 1\n"), zm::DomainError);
  EXPECT_THROW(zm::cli::parse_verify_config("abs_tol\n"), zm::DomainError);
  EXPECT_THROW(zm::cli::parse_verify_config("abs_tol = -1\n"), zm::DomainError);
  EXPECT_TRUE(zm::cli::parse_verify_config("").grid.identities.size() ==
              zm::all_identities().size());
}

TEST(CliVerify, JsonAndCsvReports) {
  const auto cfg_path = temp_path("verify.cfg");
  std::ofstream(cfg_path) << "grid.yule_mixture.b = 1\ngrid.yule_mixture.x = 0..2\n";
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  const auto json_run = run_cli({"verify", "--config", cfg_path.string(), "--format", "json"});
  const auto again = run_cli({"verify", "--config", cfg_path.string(), "--format", "json",
                              "--threads", "3"});
  ::unsetenv("SOURCE_DATE_EPOCH");
  ASSERT_EQ(json_run.code, zm::cli::kOk) << json_run.err;
  EXPECT_EQ(json_run.out, again.out);

  const auto doc = nlohmann::json::parse(json_run.out);
  EXPECT_TRUE(doc.at("all_passed").get<bool>());
  EXPECT_EQ(doc.at("timestamp"), "1970-01-01T00:00:00Z");
  EXPECT_EQ(doc.at("version"), "0.1.0");
  ASSERT_EQ(doc.at("checks").size(), 3u);
  const auto& first = doc.at("checks")[0];
  for (const char* key : {"identity", "params", "x", "value", "expected", "abs_err",
                          "rel_err", "abs_threshold", "rel_threshold", "converged",
                          "passed", "evals"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
  EXPECT_EQ(first.at("identity"), "yule_mixture");
  EXPECT_EQ(first.at("params").at("b"), 1.0);

  const auto csv = run_cli({"verify", "--config", cfg_path.string(), "--format", "csv"});
  ASSERT_EQ(csv.code, zm::cli::kOk);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "identity,params,x,value,expected,abs_err,rel_err,passed,converged,evals");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 4);
}

TEST(CliVerify, FailingIdentityExitsOne) {
  const auto cfg_path = temp_path("starved.cfg");
  std::ofstream(cfg_path) << "abs_tol = 1e-15\nrel_tol = 1e-15\nmax_subdivisions = 1\n"
                             "grid.nb_mixture.r = 2.5\ngrid.nb_mixture.s = 2\n"
                             "grid.nb_mixture.x = 3\n";
  const auto r = run_cli({"verify", "--config", cfg_path.string(), "--format", "csv"});
  EXPECT_EQ(r.code, zm::cli::kIdentityFailure) << r.err;
  EXPECT_NE(r.out.find("false"), std::string::npos);
}

TEST(CliVerify, OutputFileHasSameBytes) {
  const auto cfg_path = temp_path("out.cfg");
  std::ofstream(cfg_path) << "grid.gamma_poisson.x = 0\n";
  const auto out_path = temp_path("report.csv");
  const auto to_stdout = run_cli({"verify", "--config", cfg_path.string(), "--format", "csv"});
  const auto to_file = run_cli({"verify", "--config", cfg_path.string(), "--format", "csv",
                                "--output", out_path.string()});
  ASSERT_EQ(to_file.code, zm::cli::kOk);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(slurp(out_path), to_stdout.out);
}

TEST(CliSample, SeedIsRequired) {
  const auto r = run_cli({"sample", "--chain", "direct", "--s", "2", "--n", "10"});
  EXPECT_EQ(r.code, zm::cli::kUsage);
  EXPECT_NE(r.err.find("seed"), std::string::npos) << r.err;
}

TEST(CliSample, ByteIdenticalAcrossRuns) {
  for (const char* chain : {"direct", "geometric", "poisson"}) {
    const std::vector<std::string> args = {"sample", "--chain", chain, "--s", "1.5",
                                           "--n", "2000", "--seed", "123", "--stream", "4"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.code, zm::cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 2000);
  }
}

TEST(CliSample, SummaryAndFitTable) {
  const auto counts = temp_path("counts.txt");
  const auto summary = temp_path("summary.json");
  const auto table = temp_path("fit.csv");
  const auto r = run_cli({"sample", "--chain", "geometric", "--s", "2", "--n", "20000",
                          "--seed", "9", "--output", counts.string(), "--summary",
                          summary.string(), "--fit-table", table.string()});
  ASSERT_EQ(r.code, zm::cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto doc = nlohmann::json::parse(slurp(summary));
  EXPECT_EQ(doc.at("n"), 20000);
  EXPECT_EQ(doc.at("chain"), "geometric");
  EXPECT_LT(doc.at("tv_distance").get<double>(), 0.05);
  const std::string fit = slurp(table);
  EXPECT_EQ(fit.substr(0, fit.find('\n')), "x,count,expected,abs_err");

  // Without --summary the summary sits next to the counts file.
  const auto r2 = run_cli({"sample", "--chain", "direct", "--s", "3", "--n", "100", "--seed",
                           "1", "--output", counts.string()});
  ASSERT_EQ(r2.code, zm::cli::kOk);
  EXPECT_TRUE(fs::exists(counts.string() + ".summary.json"));
}

TEST(CliSample, BadArguments) {
  EXPECT_EQ(run_cli({"sample", "--chain", "direct", "--s", "1", "--n", "10", "--seed", "1"}).code,
            zm::cli::kUsage);
  EXPECT_EQ(run_cli({"sample", "--chain", "direct", "--s", "2", "--n", "0", "--seed", "1"}).code,
            zm::cli::kUsage);
  EXPECT_EQ(run_cli({"sample", "--chain", "magic", "--s", "2", "--n", "5", "--seed", "1"}).code,
            zm::cli::kUsage);
  EXPECT_EQ(run_cli({"sample", "--chain", "direct", "--s", "2", "--n", "5", "--seed", "1",
                     "--eps", "0.5"})
                .code,
            zm::cli::kUsage);
}
